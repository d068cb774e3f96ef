#pragma once

#include <string>
#include <vector>

#include "atcalc/diagram.hpp"
#include "atcalc/domains.hpp"
#include "atcalc/f2.hpp"

namespace atc {

enum class DiskShape { bigon, rectangle };

struct CountedDisk {
    Generator from;
    Generator to;
    Domain domain;
    DiskShape shape = DiskShape::bigon;
    std::int64_t j_plus = 0;
};

/* Empty embedded bigons and rectangles of a nice admissible diagram,
   per generator pair, deterministic order. Throws on non-nice or
   inadmissible diagrams. */
std::vector<CountedDisk> enumerate_disks(const HeegaardDiagram& d);

std::int64_t j_plus_index1(const HeegaardDiagram& d, const CountedDisk& disk);

struct SplitDifferential {
    std::vector<Generator> gens; /* canonical enumeration order */
    std::vector<BitMat> dr;      /* dr[r]: entry (to, from), F2 */
    std::size_t i_max = 0;
};

SplitDifferential split_differential(const HeegaardDiagram& d);

} // namespace atc
