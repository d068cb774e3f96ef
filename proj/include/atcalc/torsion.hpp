#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atcalc/complex.hpp"
#include "atcalc/f2.hpp"

namespace atc {

/* dim over F2 of E^r_p = Z^r_p / (Z^{r-1}_{p-1} + B^{r-1}_p) */
std::size_t page_dimension(const FilteredComplex& fc, std::size_t r, std::size_t p);

/* Witness chains c_0, ..., c_k of an eqn-style boundary certificate. */
struct Certificate {
    std::vector<BitVec> c;
};

/* Whether class (supported at level 0) lies in B^k_0 = F_0 n dF_k; returns
   the certificate when so. One stacked F2 linear system. */
std::optional<Certificate> in_boundary_depth(const FilteredComplex& fc,
                                             const BitVec& cls, std::size_t k);

struct ATReport {
    enum Kind { finite, undetermined, infinite } kind = undetermined;
    std::size_t value = 0; /* meaningful when finite */
    std::size_t cap = 0;
    std::optional<Certificate> witness;
};

/* Minimal k <= cap with eh in B^k_0; "undetermined" past the cap unless the
   exact backend certifies infinity. */
ATReport algebraic_torsion(const FilteredComplex& fc, std::size_t cap, bool exact);

/* true iff eh lies in no B^k_0 at all; u-polynomial normal form backend */
bool decide_infinity(const FilteredComplex& fc);

/* the exact backend's per-k solvability prediction, for agreement checks */
bool predict_solvable(const FilteredComplex& fc, std::size_t k);

} // namespace atc
