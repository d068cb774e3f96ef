#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace atc {

using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>; /* row-major, rows of equal length */

/* Solution set of A x = b over the integers. */
struct IntSolution {
    IntVec particular;
    std::vector<IntVec> kernel; /* lattice basis of A x = 0 */
};

/* Hermite-style column elimination with unimodular transform tracking.
   Returns nullopt when no integer solution exists. */
std::optional<IntSolution> int_solve(const IntMat& a, const IntVec& b);

/* Lattice basis of { x : A x = 0 }. */
std::vector<IntVec> int_kernel(const IntMat& a);

/* Whether the lattice spanned by basis contains a nonzero vector with all
   coordinates >= 0. Decided exactly by Fourier-Motzkin elimination over the
   rationals (a rational solution scales to an integer one). */
bool lattice_has_nonneg_nonzero(const std::vector<IntVec>& basis);

} // namespace atc
