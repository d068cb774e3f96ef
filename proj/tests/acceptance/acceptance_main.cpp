/* Acceptance gate: eight criteria, one PASS/FAIL line each, nonzero exit on
   any failure. Numeric expectations and time budgets are pinned below. */

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "atcalc/complex.hpp"
#include "atcalc/diagram.hpp"
#include "atcalc/disks.hpp"
#include "atcalc/domains.hpp"
#include "atcalc/gluing.hpp"
#include "atcalc/torsion.hpp"
#include "../support/fixtures.hpp"
#include "../support/random_diagrams.hpp"

using namespace atc;
using testsupport::load_fixture;

namespace {

struct Failure {
    std::string detail;
};

void require(bool cond, const std::string& detail) {
    if (!cond) throw Failure{detail};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/* ---- reference data for the standard torsion example ------------------- */

/* beta curve hit by each named intersection point, per alpha curve letter */
const std::map<char, std::map<int, int>> kBetaOf = {
    {'x', {{1, 1}, {2, 3}, {3, 3}, {4, 4}, {5, 4}, {6, 2}, {9, 1}}},
    {'y', {{1, 2}, {2, 3}, {3, 3}, {4, 1}, {11, 3}, {12, 5}, {13, 5}, {14, 4}, {15, 4}, {16, 1}}},
    {'z', {{1, 3}, {2, 2}, {3, 4}}},
    {'w', {{1, 4}, {2, 3}, {3, 5}}},
    {'v', {{1, 5}, {2, 4}}}};

const char kLetters[5] = {'x', 'y', 'z', 'w', 'v'};

/* expected canonical cycle display and cycle count per generator */
const std::map<std::string, std::pair<std::string, int>> kCycleOracle = {
    {"(1,1,1,1,1)", {"(1)(2)(3)(4)(5)", 5}}, {"(1,2,2,1,1)", {"(1)(23)(4)(5)", 4}},
    {"(1,3,2,1,1)", {"(1)(23)(4)(5)", 4}},   {"(2,4,2,1,1)", {"(132)(4)(5)", 3}},
    {"(3,4,2,1,1)", {"(132)(4)(5)", 3}},     {"(4,4,2,2,1)", {"(1432)(5)", 2}},
    {"(5,4,2,2,1)", {"(1432)(5)", 2}},       {"(6,4,3,2,1)", {"(12)(34)(5)", 3}},
    {"(9,1,3,2,1)", {"(1)(2)(34)(5)", 4}},   {"(9,15,2,2,1)", {"(1)(243)(5)", 3}},
    {"(9,14,2,2,1)", {"(1)(243)(5)", 3}},    {"(9,13,2,2,2)", {"(1)(2543)", 2}},
    {"(9,12,2,2,2)", {"(1)(2543)", 2}},      {"(9,11,2,3,2)", {"(1)(23)(45)", 3}}};

struct DiskOracleRow {
    std::string shape;
    std::vector<std::string> corners; /* sorted point names */
    long long two_n, diff, jp;
};

std::vector<std::string> corner_set(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    return names;
}

/* the thirteen holomorphic disks of the standard example */
const std::vector<DiskOracleRow> kDiskOracle = {
    {"rectangle", corner_set({"y1", "y2", "z1", "z2"}), 2, -1, 0},
    {"rectangle", corner_set({"x1", "x2", "y3", "y4"}), 2, -1, 0},
    {"rectangle", corner_set({"x3", "x4", "w1", "w2"}), 2, -1, 0},
    {"rectangle", corner_set({"x5", "x6", "z2", "z3"}), 2, 1, 2},
    {"rectangle", corner_set({"x6", "x9", "y4", "y1"}), 2, -1, 0},
    {"rectangle", corner_set({"y1", "y15", "z3", "z2"}), 2, -1, 0},
    {"rectangle", corner_set({"y14", "y13", "v1", "v2"}), 2, -1, 0},
    {"rectangle", corner_set({"y12", "y11", "w2", "w3"}), 2, 1, 2},
    {"bigon", corner_set({"y2", "y3"}), 1, 0, 0},
    {"bigon", corner_set({"x2", "x3"}), 1, 0, 0},
    {"bigon", corner_set({"x4", "x5"}), 1, 0, 0},
    {"bigon", corner_set({"y15", "y14"}), 1, 0, 0},
    {"bigon", corner_set({"y13", "y12"}), 1, 0, 0}};

std::vector<int> parse_tuple(const std::string& name) {
    require(name.size() >= 2 && name.front() == '(' && name.back() == ')',
            "generator name is not a tuple: " + name);
    std::vector<int> out;
    int cur = 0;
    bool have = false;
    for (std::size_t i = 1; i + 1 < name.size(); ++i) {
        if (name[i] == ',') {
            require(have, "empty tuple component in " + name);
            out.push_back(cur);
            cur = 0;
            have = false;
        } else {
            require(name[i] >= '0' && name[i] <= '9', "non-digit in tuple " + name);
            cur = cur * 10 + (name[i] - '0');
            have = true;
        }
    }
    require(have, "empty tuple component in " + name);
    out.push_back(cur);
    return out;
}

/* permutation sigma(t) = beta curve of the t-th tuple entry, 1-based */
std::vector<int> tuple_permutation(const std::vector<int>& tup) {
    require(tup.size() == 5, "tuple is not length 5");
    std::vector<int> sigma(6, 0);
    std::vector<bool> hit(6, false);
    for (int t = 1; t <= 5; ++t) {
        auto row = kBetaOf.find(kLetters[t - 1]);
        auto it = row->second.find(tup[std::size_t(t - 1)]);
        require(it != row->second.end(), "unknown point subscript in tuple");
        sigma[std::size_t(t)] = it->second;
        require(!hit[std::size_t(it->second)], "tuple is not a bijection");
        hit[std::size_t(it->second)] = true;
    }
    return sigma;
}

/* cycles ordered by smallest element, each cycle starting at its smallest */
std::pair<std::string, int> canonical_cycles(const std::vector<int>& sigma) {
    std::string disp;
    int count = 0;
    std::vector<bool> seen(6, false);
    for (int s = 1; s <= 5; ++s) {
        if (seen[std::size_t(s)]) continue;
        ++count;
        disp += '(';
        int t = s;
        do {
            seen[std::size_t(t)] = true;
            disp += char('0' + t);
            t = sigma[std::size_t(t)];
        } while (t != s);
        disp += ')';
    }
    return {disp, count};
}

std::string point_of(int coord, int sub) {
    return std::string(1, kLetters[coord]) + std::to_string(sub);
}

/* ---- criteria ----------------------------------------------------------- */

void criterion_1_cycle_counts() {
    auto t0 = std::chrono::steady_clock::now();
    auto raw = load_fixture("giroux_torsion.json");
    require(raw["generators"].size() == 14, "expected 14 generators");
    for (const auto& gj : raw["generators"]) {
        std::string name = gj["name"].get<std::string>();
        int cycles = gj["cycles"].get<int>();
        auto oracle = kCycleOracle.find(name);
        require(oracle != kCycleOracle.end(), "unexpected generator " + name);
        auto [disp, count] = canonical_cycles(tuple_permutation(parse_tuple(name)));
        require(disp == oracle->second.first,
                name + ": cycle display " + disp + " != " + oracle->second.first);
        require(count == oracle->second.second, name + ": cycle count mismatch");
        require(cycles == count, name + ": fixture lists " + std::to_string(cycles) +
                                     " cycles, permutation has " + std::to_string(count));
    }
    require(seconds_since(t0) < 1.0, "over the 1s budget");
}

void criterion_2_disk_table() {
    auto raw = load_fixture("giroux_torsion.json");
    std::map<std::string, int> cycles;
    for (const auto& gj : raw["generators"])
        cycles[gj["name"].get<std::string>()] = gj["cycles"].get<int>();

    std::vector<bool> used(kDiskOracle.size(), false);
    require(raw["disks"].size() == kDiskOracle.size(), "expected 13 disks");
    for (const auto& dj : raw["disks"]) {
        std::string from = dj["from"].get<std::string>(), to = dj["to"].get<std::string>();
        auto tf = parse_tuple(from), tt = parse_tuple(to);
        std::vector<std::string> corners;
        for (std::size_t t = 0; t < 5; ++t) {
            if (tf[t] == tt[t]) continue;
            corners.push_back(point_of(int(t), tf[t]));
            corners.push_back(point_of(int(t), tt[t]));
        }
        std::string shape = corners.size() == 2   ? "bigon"
                            : corners.size() == 4 ? "rectangle"
                                                  : "?";
        std::sort(corners.begin(), corners.end());
        long long jp = dj["jplus"].get<long long>();
        long long diff = cycles.at(from) - cycles.at(to);
        long long two_n = jp + 1 - diff;

        bool matched = false;
        for (std::size_t i = 0; i < kDiskOracle.size(); ++i) {
            const auto& row = kDiskOracle[i];
            if (row.corners != corners) continue;
            require(!used[i], "disk corners matched twice: " + from + " -> " + to);
            used[i] = true;
            matched = true;
            require(row.shape == shape, from + " -> " + to + ": shape mismatch");
            require(row.jp == jp, from + " -> " + to + ": J+ mismatch");
            require(row.diff == diff, from + " -> " + to + ": |x|-|y| mismatch");
            require(row.two_n == two_n, from + " -> " + to + ": 2(nx+ny) mismatch");
            break;
        }
        require(matched, "no reference row for disk " + from + " -> " + to);
    }
    for (bool u : used) require(u, "a reference disk row went unmatched");
}

BitVec chain(const FilteredComplex& fc, const std::vector<std::string>& names) {
    BitVec v(fc.size());
    for (const auto& n : names) v ^= fc.unit(n);
    return v;
}

bool certifies(const FilteredComplex& fc, const std::vector<BitVec>& levels,
               const std::string& target) {
    Element e;
    e.level = levels;
    Element im = apply_total(fc, e);
    if (im.level.empty() || !(im.level[0] == fc.unit(target))) return false;
    for (std::size_t j = 1; j < im.level.size(); ++j)
        if (im.level[j].any()) return false;
    return true;
}

void criterion_3_witness_and_at() {
    auto t0 = std::chrono::steady_clock::now();
    FilteredComplex fc = from_fixture(load_fixture("giroux_torsion.json"));
    BitVec b0 = chain(fc, {"(1,2,2,1,1)", "(2,4,2,1,1)", "(4,4,2,2,1)", "(6,4,3,2,1)",
                           "(9,15,2,2,1)", "(9,13,2,2,2)"});
    BitVec b1 = chain(fc, {"(6,4,3,2,1)", "(9,15,2,2,1)", "(9,13,2,2,2)", "(9,11,2,3,2)"});
    BitVec b2 = chain(fc, {"(9,11,2,3,2)"});
    require(certifies(fc, {b0, b1, b2}, "(1,1,1,1,1)"),
            "reference witness (b0, b1, b2) rejected");

    ATReport rep = algebraic_torsion(fc, 64, false);
    require(rep.kind == ATReport::finite, "AT not finite");
    require(rep.value <= 2, "AT above 2");
    require(rep.witness.has_value(), "no witness returned");
    require(rep.witness->c.size() == rep.value + 1, "witness depth != AT + 1");
    require(certifies(fc, rep.witness->c, "(1,1,1,1,1)"), "returned witness invalid");
    require(seconds_since(t0) < 5.0, "over the 5s budget");
}

void criterion_4_eh_in_total_image() {
    FilteredComplex fc = from_fixture(load_fixture("giroux_torsion.json"));
    BitVec u = chain(fc, {"(1,2,2,1,1)", "(2,4,2,1,1)", "(4,4,2,2,1)", "(6,4,3,2,1)",
                          "(9,15,2,2,1)", "(9,13,2,2,2)", "(9,11,2,3,2)"});
    BitVec total(fc.size());
    for (const auto& d : fc.dr) total ^= d.apply(u);
    require(total == fc.unit("(1,1,1,1,1)"), "seven-term primitive does not hit eh");
}

void criterion_5_overtwisted() {
    auto t0 = std::chrono::steady_clock::now();
    HeegaardDiagram d = parse_diagram(load_fixture("overtwisted_disk.json"));
    require(validate_diagram(d).ok(), "diagram invalid");
    auto disks = enumerate_disks(d);
    require(disks.size() == 1, "expected exactly one disk");
    require(disks[0].shape == DiskShape::bigon, "disk is not a bigon");
    require(generator_name(d, disks[0].from) == "y", "bigon source is not y");
    require(generator_name(d, disks[0].to) == "x", "bigon target is not x");
    require(disks[0].j_plus == 0, "bigon J+ nonzero");
    ATReport rep = algebraic_torsion(from_diagram(d), 64, false);
    require(rep.kind == ATReport::finite && rep.value == 0, "AT != 0");
    require(seconds_since(t0) < 1.0, "over the 1s budget");
}

void criterion_6_random_diagrams() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(20260825u);
    std::size_t n_disks = 0;
    const int quota = 110;
    for (int i = 0; i < quota; ++i) {
        HeegaardDiagram d = testsupport::random_grid_diagram(rng);
        for (const auto& disk : enumerate_disks(d)) {
            ++n_disks;
            require(maslov_index(d, disk.domain, disk.from, disk.to) == 1,
                    "disk with Maslov index != 1");
            require(disk.j_plus >= 0 && disk.j_plus % 2 == 0, "J+ odd or negative");
            if (disk.shape == DiskShape::bigon)
                require(disk.j_plus == 0, "bigon with J+ != 0");
            else
                require(disk.j_plus == 0 || disk.j_plus == 2, "rectangle J+ not in {0, 2}");
        }
        from_diagram(d); /* throws unless the convolution identities hold */
    }
    require(n_disks > 0, "no disks seen across the sample");
    require(seconds_since(t0) < 60.0, "over the 60s budget");
}

void criterion_7_gluing() {
    auto t0 = std::chrono::steady_clock::now();
    auto union_raw = load_fixture("ot_t1_union.json");

    auto ot_raw = load_fixture("overtwisted_disk.json");
    GluingData g = parse_gluing(ot_raw, union_raw, load_fixture("map_ot_into_union.json"));
    require(verify_embedding(g).empty(), "overtwisted embedding rejected");
    require(verify_filtered_chain_map(g).ok(), "overtwisted chain map rejected");
    require(generator_name(g.super, induced_map(g, eh_generator(g.sub))) ==
                generator_name(g.super, eh_generator(g.super)),
            "Phi(eh) != eh for the overtwisted piece");
    ATInequalityReport ineq = at_inequality_check(g, 64, false);
    require(ineq.verdict == ATInequalityReport::holds, "overtwisted inequality not holds");
    require(ineq.sub_at.kind == ATReport::finite && ineq.sub_at.value == 0, "AT(sub) != 0");
    require(ineq.super_at.kind == ATReport::finite && ineq.super_at.value == 0,
            "AT(super) != 0");
    require(ineq.witness_transported, "witness not transported");

    auto t1_raw = load_fixture("torus_once_punctured.json");
    GluingData g2 = parse_gluing(t1_raw, union_raw, load_fixture("map_t1_into_union.json"));
    require(verify_embedding(g2).empty(), "torus embedding rejected");
    require(verify_filtered_chain_map(g2).ok(), "torus chain map rejected");
    require(generator_name(g2.super, induced_map(g2, eh_generator(g2.sub))) ==
                generator_name(g2.super, eh_generator(g2.super)),
            "Phi(eh) != eh for the torus piece");
    ATInequalityReport ineq2 = at_inequality_check(g2, 64, true);
    require(ineq2.verdict == ATInequalityReport::holds, "torus inequality not holds");
    require(ineq2.sub_at.kind == ATReport::infinite, "AT(sub) not infinite");
    require(ineq2.super_at.kind == ATReport::finite && ineq2.super_at.value == 0,
            "AT(super) != 0");
    require(seconds_since(t0) < 10.0, "over the 10s budget");
}

void criterion_8_backend_agreement() {
    std::vector<std::pair<std::string, FilteredComplex>> cases;
    cases.emplace_back("giroux_torsion", from_fixture(load_fixture("giroux_torsion.json")));
    cases.emplace_back("zero_differential",
                       from_fixture(load_fixture("zero_differential.json")));
    for (const char* f :
         {"overtwisted_disk.json", "torus_once_punctured.json", "ot_t1_union.json",
          "two_square_punctured.json"}) {
        HeegaardDiagram d = parse_diagram(load_fixture(f));
        require(validate_diagram(d).ok(), std::string(f) + " invalid");
        cases.emplace_back(f, from_diagram(d));
    }
    for (const auto& [label, fc] : cases) {
        require(fc.eh.has_value(), label + ": no eh");
        BitVec cls = fc.unit(*fc.eh);
        for (std::size_t k = 0; k <= 8; ++k) {
            bool solver = in_boundary_depth(fc, cls, k).has_value();
            bool predicted = predict_solvable(fc, k);
            require(solver == predicted, label + ": backends disagree at k = " +
                                             std::to_string(k));
            if (solver)
                require(!decide_infinity(fc),
                        label + ": infinity claimed despite a certificate");
        }
    }
    FilteredComplex zero = from_fixture(load_fixture("zero_differential.json"));
    require(decide_infinity(zero), "zero differential not certified infinite");
}

struct Criterion {
    const char* label;
    std::function<void()> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1. torsion example generators and cycle counts", criterion_1_cycle_counts},
        {"2. torsion example disk table (2n, |x|-|y|, J+)", criterion_2_disk_table},
        {"3. reference witness accepted and AT <= 2", criterion_3_witness_and_at},
        {"4. eh lies in the image of the total differential", criterion_4_eh_in_total_image},
        {"5. overtwisted disk: one bigon, J+ = 0, AT = 0", criterion_5_overtwisted},
        {"6. random diagrams: index, parity, J+ bounds", criterion_6_random_diagrams},
        {"7. gluing maps: chain maps and AT inequality", criterion_7_gluing},
        {"8. capped scan agrees with the exact backend", criterion_8_backend_agreement},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        try {
            c.body();
        } catch (const Failure& f) {
            detail = f.detail;
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        if (detail.empty()) {
            std::cout << "PASS  " << c.label << "\n";
        } else {
            ++failures;
            std::cout << "FAIL  " << c.label << "  [" << detail << "]\n";
        }
    }
    return failures == 0 ? 0 : 1;
}
