#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "atcalc/diagram.hpp"
#include "atcalc/disks.hpp"
#include "atcalc/f2.hpp"

namespace atc {

/* Filtered chain complex over F2 with split differential d0, ..., d_imax. */
struct FilteredComplex {
    std::vector<std::string> names;
    std::vector<int> cycles;          /* |x| per generator */
    std::map<std::string, int> index; /* name -> position */
    std::vector<BitMat> dr;
    std::optional<std::string> eh;
    bool verified = false; /* true when built from a diagram */

    std::size_t size() const { return names.size(); }
    std::size_t i_max() const { return dr.size() - 1; }
    BitVec unit(const std::string& name) const;
};

/* Finitely supported sequence of F2 chains (c_0, c_1, ...). */
struct Element {
    std::vector<BitVec> level;
};

/* Builds and verifies the complex of a diagram: convolution identities
   sum_{i+j=n} d_i d_j = 0, and eh a cycle under every d_r. */
FilteredComplex from_diagram(const HeegaardDiagram& d);

/* Complex from a fixture file; differentials are taken as listed and NOT
   verified. Duplicate disk entries cancel mod 2 with a warning. */
FilteredComplex from_fixture(const nlohmann::json& j,
                             std::vector<std::string>* warnings = nullptr);

Element apply_total(const FilteredComplex& fc, const Element& e);

} // namespace atc
