#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "atcalc/diagram.hpp"

namespace atc {

/* One step of a monodromy walk. Exactly one of three forms:
   - leave the current band through `end` (0 or 1) at attachment slot `slot`
   - leave the current vertex through its `port`-th ccw port at `slot`
   - terminate: run straight to the terminal mark of the home band */
struct WalkStep {
    enum class Kind { leave_band, leave_vertex, terminate };
    Kind kind = Kind::terminate;
    int end = 0;
    int port = 0;
    int slot = 0;
};

/* Image h(a) of one basis arc, as a walk through bands and vertices.
   The walk starts at the launch mark of arc `arc` on band `edge` and
   must terminate back on that band. */
struct MonodromyWalk {
    std::string edge;
    int arc = 0;
    std::vector<WalkStep> path;
};

struct PobVertex {
    std::string id;
    std::vector<std::pair<std::string, int>> ports; /* (edge id, end), ccw */
};

struct PobEdge {
    std::string id;
    bool in_p = false;
    int arcs = 0;
};

/* Ribbon graph spine of S with a subgraph P (the in_p edges) carrying
   basis arcs, plus the monodromy images of those arcs. */
struct PartialOpenBook {
    std::vector<PobVertex> vertices;
    std::vector<PobEdge> edges;
    std::vector<MonodromyWalk> monodromy;
};

PartialOpenBook parse_pob(const nlohmann::json& j);

/* Heegaard diagram of the sutured manifold determined by (S, P, h):
   alpha curves from the arc cocores, beta curves from their monodromy
   images, one marked eh point per arc. Throws on malformed input, on
   walks that cannot be drawn disjointly as stated, and on P edges
   carrying no arcs. */
HeegaardDiagram assemble_from_partial_open_book(const PartialOpenBook& pob);

} // namespace atc
