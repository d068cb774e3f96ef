#include "atcalc/intlin.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace atc {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
        throw std::overflow_error("integer elimination overflow");
    return std::int64_t(v);
}

/* column combo: (ci, cj) <- (u*ci + v*cj, s*ci + t*cj), applied to h and u */
void col_combo(IntMat& m, std::size_t ci, std::size_t cj,
               std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    for (auto& row : m) {
        i128 x = i128(a) * row[ci] + i128(b) * row[cj];
        i128 y = i128(c) * row[ci] + i128(d) * row[cj];
        row[ci] = narrow(x);
        row[cj] = narrow(y);
    }
}

void col_swap(IntMat& m, std::size_t ci, std::size_t cj) {
    for (auto& row : m) std::swap(row[ci], row[cj]);
}

void col_negate(IntMat& m, std::size_t c) {
    for (auto& row : m) row[c] = -row[c];
}

std::int64_t ext_gcd(std::int64_t a, std::int64_t b,
                     std::int64_t& x, std::int64_t& y) {
    if (b == 0) { x = (a < 0 ? -1 : 1); y = 0; return a < 0 ? -a : a; }
    std::int64_t x1, y1;
    std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

} // namespace

std::optional<IntSolution> int_solve(const IntMat& a, const IntVec& b) {
    std::size_t m = a.size();
    std::size_t n = m ? a[0].size() : 0;
    if (b.size() != m) throw std::invalid_argument("int_solve: dimension mismatch");

    IntMat h = a;
    IntMat u(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

    std::vector<std::pair<std::size_t, std::size_t>> pivots; /* (row, col) */
    std::size_t cur = 0;
    for (std::size_t r = 0; r < m && cur < n; ++r) {
        std::size_t j = cur;
        while (j < n && h[r][j] == 0) ++j;
        if (j == n) continue;
        if (j != cur) { col_swap(h, cur, j); col_swap(u, cur, j); }
        for (std::size_t j2 = cur + 1; j2 < n; ++j2) {
            if (h[r][j2] == 0) continue;
            std::int64_t p = h[r][cur], q = h[r][j2], x, y;
            std::int64_t g = ext_gcd(p, q, x, y);
            /* unimodular: det = x*(p/g) + y*(q/g) = 1 */
            col_combo(h, cur, j2, x, y, -(q / g), p / g);
            col_combo(u, cur, j2, x, y, -(q / g), p / g);
        }
        if (h[r][cur] < 0) { col_negate(h, cur); col_negate(u, cur); }
        pivots.push_back({r, cur});
        ++cur;
    }

    /* forward substitution on H y = b */
    IntVec y(n, 0);
    IntVec resid = b;
    std::size_t pi = 0;
    for (std::size_t r = 0; r < m; ++r) {
        i128 s = 0;
        for (std::size_t c = 0; c < cur; ++c) s += i128(h[r][c]) * y[c];
        i128 rem = i128(resid[r]) - s;
        if (pi < pivots.size() && pivots[pi].first == r) {
            std::int64_t g = h[r][pivots[pi].second];
            if (rem % g != 0) return std::nullopt;
            y[pivots[pi].second] = narrow(rem / g);
            ++pi;
        } else if (rem != 0) {
            return std::nullopt;
        }
    }

    IntSolution sol;
    sol.particular.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        i128 s = 0;
        for (std::size_t c = 0; c < n; ++c) s += i128(u[i][c]) * y[c];
        sol.particular[i] = narrow(s);
    }
    for (std::size_t c = cur; c < n; ++c) {
        IntVec k(n);
        for (std::size_t i = 0; i < n; ++i) k[i] = u[i][c];
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

std::vector<IntVec> int_kernel(const IntMat& a) {
    if (a.empty()) return {};
    IntVec zero(a.size(), 0);
    auto sol = int_solve(a, zero);
    return sol ? sol->kernel : std::vector<IntVec>{};
}

namespace {

/* inequality sum(coef_i t_i) >= rhs, gcd-normalized */
struct Ineq {
    IntVec coef;
    std::int64_t rhs;
    bool operator<(const Ineq& o) const {
        if (coef != o.coef) return coef < o.coef;
        return rhs < o.rhs;
    }
};

Ineq normalize(IntVec c, i128 r) {
    i128 g = 0;
    for (auto v : c) g = std::gcd(g, i128(v < 0 ? -v : v));
    i128 ra = r < 0 ? -r : r;
    g = std::gcd(g, ra);
    if (g > 1) {
        for (auto& v : c) v = narrow(i128(v) / g);
        r = r / g;
    }
    return Ineq{std::move(c), narrow(r)};
}

} // namespace

bool lattice_has_nonneg_nonzero(const std::vector<IntVec>& basis) {
    if (basis.empty()) return false;
    std::size_t n = basis[0].size();
    std::size_t k = basis.size();

    std::set<Ineq> sys;
    for (std::size_t j = 0; j < n; ++j) {
        IntVec c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = basis[i][j];
        sys.insert(normalize(std::move(c), 0));
    }
    {
        IntVec c(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            i128 s = 0;
            for (std::size_t j = 0; j < n; ++j) s += basis[i][j];
            c[i] = narrow(s);
        }
        sys.insert(normalize(std::move(c), 1));
    }

    for (std::size_t var = 0; var < k; ++var) {
        std::vector<Ineq> pos, neg, rest;
        for (auto& q : sys) {
            if (q.coef[var] > 0) pos.push_back(q);
            else if (q.coef[var] < 0) neg.push_back(q);
            else rest.push_back(q);
        }
        std::set<Ineq> next(rest.begin(), rest.end());
        for (auto& p : pos)
            for (auto& m : neg) {
                std::int64_t pc = p.coef[var], mc = -m.coef[var];
                IntVec c(k, 0);
                for (std::size_t i = 0; i < k; ++i)
                    c[i] = narrow(i128(mc) * p.coef[i] + i128(pc) * m.coef[i]);
                i128 r = i128(mc) * p.rhs + i128(pc) * m.rhs;
                next.insert(normalize(std::move(c), r));
                if (next.size() > 500000)
                    throw std::runtime_error("admissibility check: projection blow-up");
            }
        sys = std::move(next);
    }

    for (auto& q : sys)
        if (q.rhs > 0) return false; /* 0 >= positive: infeasible */
    return true;
}

} // namespace atc
