#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace atc {

/* Polynomial over F2 in one variable u; bit i = coefficient of u^i. */
struct Poly2 {
    std::vector<std::uint64_t> w; /* trimmed: no trailing zero words */

    bool is_zero() const { return w.empty(); }
    long degree() const;   /* -1 for zero */
    long valuation() const; /* lowest exponent, -1 for zero */
    bool coeff(std::size_t i) const {
        std::size_t k = i >> 6;
        return k < w.size() && ((w[k] >> (i & 63)) & 1);
    }
    void set_coeff(std::size_t i, bool v);
    void trim();

    static Poly2 u_pow(std::size_t k) {
        Poly2 p;
        p.set_coeff(k, true);
        return p;
    }
    static Poly2 one() { return u_pow(0); }

    Poly2 shifted(std::size_t k) const; /* times u^k */
    friend Poly2 operator+(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    Poly2& operator+=(const Poly2& o) { *this = *this + o; return *this; }
    bool operator==(const Poly2& o) const { return w == o.w; }
    bool operator!=(const Poly2& o) const { return !(*this == o); }
};

/* a = q*b + r with deg r < deg b; b nonzero */
void poly_divmod(const Poly2& a, const Poly2& b, Poly2& q, Poly2& r);

/* One row of the diagonalized system [M | rhs]: s z = w per row, where s is
   the diagonal entry (zero past the pivots). Row operations are applied to
   rhs as well; column operations only to M. */
struct DiagRow {
    Poly2 s;
    Poly2 w;
};

std::vector<DiagRow> poly_diagonalize(std::vector<std::vector<Poly2>> m,
                                      std::vector<Poly2> rhs);

} // namespace atc
