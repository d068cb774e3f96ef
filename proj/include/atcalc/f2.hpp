#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

namespace atc {

/* Bit-packed vector over F2. */
struct BitVec {
    std::size_t n = 0;
    std::vector<std::uint64_t> w;

    BitVec() = default;
    explicit BitVec(std::size_t bits) : n(bits), w((bits + 63) / 64, 0) {}

    bool get(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w[i >> 6] |= m; else w[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
        return *this;
    }
    bool any() const {
        for (auto x : w) if (x) return true;
        return false;
    }
    std::size_t popcount() const;
    /* index of lowest set bit, or -1 */
    long lowest() const;
    bool operator==(const BitVec& o) const { return n == o.n && w == o.w; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }
};

/* Dense F2 matrix, rows of BitVec. Entry (i,j): coefficient of target i
   when applied to source j; apply() computes y = A x. */
struct BitMat {
    std::size_t rows = 0, cols = 0;
    std::vector<BitVec> row;

    BitMat() = default;
    BitMat(std::size_t r, std::size_t c) : rows(r), cols(c), row(r, BitVec(c)) {}

    bool get(std::size_t i, std::size_t j) const { return row[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v) { row[i].set(j, v); }
    void flip(std::size_t i, std::size_t j) { row[i].flip(j); }

    BitVec apply(const BitVec& x) const;
    bool operator==(const BitMat& o) const {
        return rows == o.rows && cols == o.cols && row == o.row;
    }
    bool is_zero() const {
        for (auto& r : row) if (r.any()) return false;
        return true;
    }
    static BitMat identity(std::size_t d);
    /* C = A * B */
    friend BitMat operator*(const BitMat& a, const BitMat& b);
};

std::size_t f2_rank(BitMat a);

/* Basis of { x : A x = 0 }. */
std::vector<BitVec> f2_kernel(const BitMat& a);

/* One solution of A x = b, or nullopt. Deterministic pivot order. */
std::optional<BitVec> f2_solve(const BitMat& a, const BitVec& b);

/* Echelon basis of the column space of A. */
std::vector<BitVec> f2_image_basis(const BitMat& a);

/* Incrementally built echelon span with pivot tracking. */
struct F2Span {
    std::vector<BitVec> basis;
    std::vector<std::size_t> pivot;

    /* reduce v by the basis; if nonzero remains, insert and return true */
    bool add(BitVec v);
    bool contains(BitVec v) const;
    BitVec reduce(BitVec v) const;
    std::size_t dim() const { return basis.size(); }
};

/* Basis of span(u) ∩ span(w). */
std::vector<BitVec> f2_intersect(const std::vector<BitVec>& u,
                                 const std::vector<BitVec>& w);

} // namespace atc
