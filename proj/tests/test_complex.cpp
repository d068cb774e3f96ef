#include <doctest.h>

#include <random>

#include "atcalc/complex.hpp"
#include "atcalc/diagram.hpp"
#include "support/fixtures.hpp"
#include "support/random_diagrams.hpp"

using namespace atc;
using testsupport::load_fixture;

TEST_CASE("complex: fixture ingestion") {
    std::vector<std::string> warnings;
    FilteredComplex fc = from_fixture(load_fixture("giroux_torsion.json"), &warnings);
    CHECK(warnings.empty());
    CHECK_FALSE(fc.verified);
    CHECK(fc.size() == 14);
    CHECK(fc.i_max() == 1);
    CHECK(fc.eh == "(1,1,1,1,1)");
    CHECK(fc.cycles[std::size_t(fc.index.at("(1,1,1,1,1)"))] == 5);
    CHECK(fc.cycles[std::size_t(fc.index.at("(9,11,2,3,2)"))] == 3);

    /* d0 carries the eleven J+ = 0 disks, d1 the two J+ = 2 disks */
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < fc.size(); ++i) {
        n0 += fc.dr[0].row[i].popcount();
        n1 += fc.dr[1].row[i].popcount();
    }
    CHECK(n0 == 11);
    CHECK(n1 == 2);
}

TEST_CASE("complex: paper-level differentials of the witness chains") {
    FilteredComplex fc = from_fixture(load_fixture("giroux_torsion.json"));
    auto chain = [&](std::initializer_list<const char*> names) {
        BitVec v(fc.size());
        for (auto* n : names) v ^= fc.unit(n);
        return v;
    };
    BitVec b0 = chain({"(1,2,2,1,1)", "(2,4,2,1,1)", "(4,4,2,2,1)", "(6,4,3,2,1)",
                       "(9,15,2,2,1)", "(9,13,2,2,2)"});
    BitVec b1 = chain({"(6,4,3,2,1)", "(9,15,2,2,1)", "(9,13,2,2,2)", "(9,11,2,3,2)"});
    BitVec b2 = chain({"(9,11,2,3,2)"});

    CHECK(fc.dr[0].apply(b0) == chain({"(1,1,1,1,1)", "(5,4,2,2,1)", "(9,12,2,2,2)"}));
    CHECK(fc.dr[0].apply(b1) == chain({"(9,12,2,2,2)"}));
    CHECK(fc.dr[1].apply(b1) == chain({"(5,4,2,2,1)", "(9,12,2,2,2)"}));
    CHECK_FALSE(fc.dr[0].apply(b2).any());
    CHECK(fc.dr[1].apply(b2) == chain({"(9,12,2,2,2)"}));

    /* apply_total implements d-hat on finitely supported sequences */
    Element e;
    e.level = {b0, b1, b2};
    Element im = apply_total(fc, e);
    CHECK(im.level[0] == fc.unit("(1,1,1,1,1)"));
    CHECK_FALSE(im.level[1].any());
    CHECK_FALSE(im.level[2].any());
}

TEST_CASE("complex: duplicate fixture disks cancel with a warning") {
    nlohmann::json j = {
        {"generators", {{{"name", "a"}, {"cycles", 1}}, {{"name", "b"}, {"cycles", 2}}}},
        {"eh", "b"},
        {"disks",
         {{{"from", "a"}, {"to", "b"}, {"jplus", 0}},
          {{"from", "a"}, {"to", "b"}, {"jplus", 0}}}}};
    std::vector<std::string> warnings;
    FilteredComplex fc = from_fixture(j, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0] == "duplicate disk a -> b (J+ 0) cancels mod 2");
    CHECK(fc.dr[0].is_zero());
}

TEST_CASE("complex: fixture validation errors") {
    nlohmann::json good = load_fixture("zero_differential.json");
    auto bad = good;
    bad["eh"] = "zz";
    CHECK_THROWS_AS(from_fixture(bad), std::runtime_error);
    bad = good;
    bad["disks"].push_back({{"from", "a"}, {"to", "b"}, {"jplus", 1}});
    CHECK_THROWS_WITH_AS(from_fixture(bad), doctest::Contains("even"), std::runtime_error);
    bad = good;
    bad["generators"].push_back(bad["generators"][0]);
    CHECK_THROWS_WITH_AS(from_fixture(bad), doctest::Contains("duplicate"), std::runtime_error);
}

TEST_CASE("complex: diagram build verifies and marks the result") {
    HeegaardDiagram d = parse_diagram(load_fixture("overtwisted_disk.json"));
    FilteredComplex fc = from_diagram(d);
    CHECK(fc.verified);
    CHECK(fc.size() == 2);
    CHECK(fc.eh == "x");
    CHECK(fc.dr.size() == 1);
    CHECK(fc.dr[0].apply(fc.unit("y")) == fc.unit("x"));
    CHECK_FALSE(fc.dr[0].apply(fc.unit("x")).any());
}

TEST_CASE("complex: convolution identities hold on random diagrams") {
    std::mt19937 rng(4096);
    for (int trial = 0; trial < 25; ++trial) {
        HeegaardDiagram d = testsupport::random_grid_diagram(rng);
        FilteredComplex fc = from_diagram(d); /* throws if the identities fail */
        std::size_t imax = fc.i_max();
        for (std::size_t n = 0; n <= 2 * imax; ++n) {
            BitMat acc(fc.size(), fc.size());
            for (std::size_t i = 0; i <= n && i <= imax; ++i) {
                if (n - i > imax) continue;
                BitMat prod = fc.dr[i] * fc.dr[n - i];
                for (std::size_t r = 0; r < acc.rows; ++r) acc.row[r] ^= prod.row[r];
            }
            CHECK(acc.is_zero());
        }
    }
}
