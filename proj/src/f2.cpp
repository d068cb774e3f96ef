#include "atcalc/f2.hpp"

#include <bit>
#include <stdexcept>

namespace atc {

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
}

long BitVec::lowest() const {
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k]) return long(k * 64 + std::countr_zero(w[k]));
    return -1;
}

BitVec BitMat::apply(const BitVec& x) const {
    if (x.n != cols) throw std::invalid_argument("f2: dimension mismatch");
    BitVec y(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < row[i].w.size(); ++k)
            acc ^= row[i].w[k] & x.w[k];
        y.set(i, std::popcount(acc) & 1);
    }
    return y;
}

BitMat BitMat::identity(std::size_t d) {
    BitMat m(d, d);
    for (std::size_t i = 0; i < d; ++i) m.set(i, i, true);
    return m;
}

BitMat operator*(const BitMat& a, const BitMat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("f2: dimension mismatch");
    BitMat c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k)
            if (a.get(i, k)) c.row[i] ^= b.row[k];
    return c;
}

std::size_t f2_rank(BitMat a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t p = r;
        while (p < a.rows && !a.get(p, c)) ++p;
        if (p == a.rows) continue;
        std::swap(a.row[p], a.row[r]);
        for (std::size_t i = 0; i < a.rows; ++i)
            if (i != r && a.get(i, c)) a.row[i] ^= a.row[r];
        ++r;
    }
    return r;
}

std::vector<BitVec> f2_kernel(const BitMat& a) {
    BitMat m = a;
    std::vector<long> pivot_of_col(a.cols, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && !m.get(p, c)) ++p;
        if (p == m.rows) continue;
        std::swap(m.row[p], m.row[r]);
        for (std::size_t i = 0; i < m.rows; ++i)
            if (i != r && m.get(i, c)) m.row[i] ^= m.row[r];
        pivot_of_col[c] = long(r);
        ++r;
    }
    std::vector<BitVec> ker;
    for (std::size_t c = 0; c < a.cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        BitVec v(a.cols);
        v.set(c, true);
        for (std::size_t j = 0; j < a.cols; ++j)
            if (pivot_of_col[j] >= 0 && m.get(std::size_t(pivot_of_col[j]), c))
                v.set(j, true);
        ker.push_back(std::move(v));
    }
    return ker;
}

std::optional<BitVec> f2_solve(const BitMat& a, const BitVec& b) {
    if (b.n != a.rows) throw std::invalid_argument("f2: dimension mismatch");
    BitMat m = a;
    BitVec rhs = b;
    std::vector<long> pivot_of_row(a.rows, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && !m.get(p, c)) ++p;
        if (p == m.rows) continue;
        std::swap(m.row[p], m.row[r]);
        bool bp = rhs.get(p); rhs.set(p, rhs.get(r)); rhs.set(r, bp);
        for (std::size_t i = 0; i < m.rows; ++i)
            if (i != r && m.get(i, c)) {
                m.row[i] ^= m.row[r];
                if (rhs.get(r)) rhs.flip(i);
            }
        pivot_of_row[r] = long(c);
        ++r;
    }
    for (std::size_t i = r; i < m.rows; ++i)
        if (rhs.get(i)) return std::nullopt;
    BitVec x(a.cols);
    for (std::size_t i = 0; i < r; ++i)
        if (rhs.get(i)) x.set(std::size_t(pivot_of_row[i]), true);
    return x;
}

std::vector<BitVec> f2_image_basis(const BitMat& a) {
    F2Span span;
    for (std::size_t c = 0; c < a.cols; ++c) {
        BitVec col(a.rows);
        for (std::size_t i = 0; i < a.rows; ++i)
            if (a.get(i, c)) col.set(i, true);
        span.add(std::move(col));
    }
    return span.basis;
}

bool F2Span::add(BitVec v) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (v.get(pivot[i])) v ^= basis[i];
    long p = v.lowest();
    if (p < 0) return false;
    basis.push_back(std::move(v));
    pivot.push_back(std::size_t(p));
    return true;
}

BitVec F2Span::reduce(BitVec v) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (v.get(pivot[i])) v ^= basis[i];
    return v;
}

bool F2Span::contains(BitVec v) const { return !reduce(std::move(v)).any(); }

std::vector<BitVec> f2_intersect(const std::vector<BitVec>& u,
                                 const std::vector<BitVec>& w) {
    if (u.empty() || w.empty()) return {};
    std::size_t n = u[0].n;
    /* columns of A: u then w; kernel combos give intersection elements */
    BitMat a(n, u.size() + w.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (u[j].get(i)) a.set(i, j, true);
    for (std::size_t j = 0; j < w.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (w[j].get(i)) a.set(i, u.size() + j, true);
    F2Span out;
    for (auto& k : f2_kernel(a)) {
        BitVec v(n);
        for (std::size_t j = 0; j < u.size(); ++j)
            if (k.get(j)) v ^= u[j];
        out.add(std::move(v));
    }
    return out.basis;
}

} // namespace atc
