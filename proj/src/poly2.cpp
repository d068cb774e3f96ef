#include "atcalc/poly2.hpp"

#include <bit>
#include <stdexcept>

namespace atc {

long Poly2::degree() const {
    if (w.empty()) return -1;
    std::size_t k = w.size() - 1;
    return long(k * 64 + 63 - std::countl_zero(w[k]));
}

long Poly2::valuation() const {
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k]) return long(k * 64 + std::countr_zero(w[k]));
    return -1;
}

void Poly2::set_coeff(std::size_t i, bool v) {
    std::size_t k = i >> 6;
    if (k >= w.size()) {
        if (!v) return;
        w.resize(k + 1, 0);
    }
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (v) w[k] |= m; else w[k] &= ~m;
    if (!v) trim();
}

void Poly2::trim() {
    while (!w.empty() && w.back() == 0) w.pop_back();
}

Poly2 Poly2::shifted(std::size_t k) const {
    if (is_zero()) return {};
    Poly2 out;
    std::size_t wordshift = k >> 6, bitshift = k & 63;
    out.w.assign(w.size() + wordshift + 1, 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        out.w[i + wordshift] |= w[i] << bitshift;
        if (bitshift)
            out.w[i + wordshift + 1] |= w[i] >> (64 - bitshift);
    }
    out.trim();
    return out;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 out;
    out.w.resize(std::max(a.w.size(), b.w.size()), 0);
    for (std::size_t i = 0; i < out.w.size(); ++i) {
        std::uint64_t x = i < a.w.size() ? a.w[i] : 0;
        std::uint64_t y = i < b.w.size() ? b.w[i] : 0;
        out.w[i] = x ^ y;
    }
    out.trim();
    return out;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out;
    if (a.is_zero() || b.is_zero()) return out;
    long db = b.degree();
    for (long i = 0; i <= db; ++i)
        if (b.coeff(std::size_t(i))) out += a.shifted(std::size_t(i));
    return out;
}

void poly_divmod(const Poly2& a, const Poly2& b, Poly2& q, Poly2& r) {
    if (b.is_zero()) throw std::domain_error("poly division by zero");
    q = Poly2{};
    r = a;
    long db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        std::size_t sh = std::size_t(r.degree() - db);
        q.set_coeff(sh, !q.coeff(sh));
        r += b.shifted(sh);
    }
}

namespace {

void row_op(std::vector<std::vector<Poly2>>& m, std::vector<Poly2>& rhs,
            std::size_t dst, std::size_t src, const Poly2& q) {
    for (std::size_t c = 0; c < m[dst].size(); ++c)
        m[dst][c] += q * m[src][c];
    rhs[dst] += q * rhs[src];
}

void col_op(std::vector<std::vector<Poly2>>& m,
            std::size_t dst, std::size_t src, const Poly2& q) {
    for (std::size_t r = 0; r < m.size(); ++r)
        m[r][dst] += q * m[r][src];
}

} // namespace

std::vector<DiagRow> poly_diagonalize(std::vector<std::vector<Poly2>> m,
                                      std::vector<Poly2> rhs) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    if (rhs.size() != rows) throw std::invalid_argument("poly system: dimension mismatch");

    std::size_t t = 0;
    while (t < rows && t < cols) {
        /* minimal-degree pivot in the remaining block */
        long best = -1;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (!m[i][j].is_zero() &&
                    (best < 0 || m[i][j].degree() < best)) {
                    best = m[i][j].degree();
                    bi = i; bj = j;
                }
        if (best < 0) break;
        if (bi != t) { std::swap(m[bi], m[t]); std::swap(rhs[bi], rhs[t]); }
        if (bj != t)
            for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][bj], m[i][t]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t].is_zero()) continue;
                Poly2 q, r;
                poly_divmod(m[i][t], m[t][t], q, r);
                row_op(m, rhs, i, t, q);
                if (!m[i][t].is_zero()) {
                    /* remainder has lower degree; promote it to the pivot */
                    std::swap(m[i], m[t]);
                    std::swap(rhs[i], rhs[t]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j].is_zero()) continue;
                Poly2 q, r;
                poly_divmod(m[t][j], m[t][t], q, r);
                col_op(m, j, t, q);
                if (!m[t][j].is_zero()) {
                    for (std::size_t i = 0; i < rows; ++i)
                        std::swap(m[i][j], m[i][t]);
                    clean = false;
                }
            }
        }
        ++t;
    }

    std::vector<DiagRow> out(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        out[i].s = (i < t && i < cols) ? m[i][i] : Poly2{};
        out[i].w = rhs[i];
    }
    return out;
}

} // namespace atc
