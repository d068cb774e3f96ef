#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "atcalc/complex.hpp"
#include "atcalc/diagram.hpp"
#include "atcalc/torsion.hpp"

namespace atc {

struct GluingData {
    HeegaardDiagram sub;
    HeegaardDiagram super;
    std::vector<int> alpha_map; /* sub curve index -> super curve index */
    std::vector<int> beta_map;
    std::map<std::string, std::string> point_map;
    std::map<std::string, std::string> region_map;
    std::vector<std::string> xprime; /* super points, one per complementary alpha */
};

/* MAP.json: {"alpha": [...], "beta": [...], "points": {...}, "regions": {...},
   "xprime": [...]} */
GluingData parse_gluing(const nlohmann::json& sub, const nlohmann::json& super,
                        const nlohmann::json& map);

/* incidence-preservation of the embedding plus xprime compatibility */
std::vector<std::string> verify_embedding(const GluingData& g);

/* Phi(y) = (embedded y, xprime) as a super generator */
Generator induced_map(const GluingData& g, const Generator& sub_gen);

struct ChainMapReport {
    bool disks_match = false;  /* (a) super disks between images come from sub */
    bool jplus_match = false;  /* (b) J+ equal on matched pairs */
    bool commutes = false;     /* (c) Phi d_r = d_r Phi for all r */
    std::vector<std::string> violations;
    bool ok() const { return disks_match && jplus_match && commutes; }
};

ChainMapReport verify_filtered_chain_map(const GluingData& g);

struct ATInequalityReport {
    ATReport sub_at;
    ATReport super_at;
    enum Verdict { holds, violated, inconclusive } verdict = inconclusive;
    std::string detail;
    bool witness_transported = false;
};

ATInequalityReport at_inequality_check(const GluingData& g, std::size_t cap, bool exact);

} // namespace atc
