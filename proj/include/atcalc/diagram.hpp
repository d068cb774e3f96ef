#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace atc {

enum class Quadrant { NE = 0, NW = 1, SW = 2, SE = 3 };

inline const char* quadrant_name(Quadrant q) {
    static const char* names[] = {"NE", "NW", "SW", "SE"};
    return names[int(q)];
}
std::optional<Quadrant> quadrant_from(const std::string& s);

struct IntersectionPoint {
    std::string id;
    int alpha = -1;
    int beta = -1;
    std::array<std::string, 4> quad; /* region id per Quadrant */
};

struct Region {
    std::string id;
    int chi = 0;
    std::vector<std::pair<std::string, Quadrant>> corners;
    bool on_boundary = false;
    int basepoints = 0;
};

struct HeegaardDiagram {
    std::vector<std::vector<std::string>> alpha; /* cyclic point-id words */
    std::vector<std::vector<std::string>> beta;
    std::vector<IntersectionPoint> points; /* sorted by id */
    std::vector<Region> regions;           /* input order */
    std::optional<std::vector<std::string>> eh;

    std::map<std::string, int> point_index;
    std::map<std::string, int> region_index;

    void build_index();
    const IntersectionPoint& point(const std::string& id) const;
    const Region& region(const std::string& id) const;
};

/* One intersection point per alpha curve, indexed by alpha position. */
struct Generator {
    std::vector<int> pt; /* point index per alpha curve */

    bool operator==(const Generator& o) const { return pt == o.pt; }
    bool operator<(const Generator& o) const { return pt < o.pt; }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

HeegaardDiagram parse_diagram(const nlohmann::json& j);

ValidationReport validate_diagram(const HeegaardDiagram& d);

/* sorted by (alpha index, point id), lexicographically */
std::vector<Generator> enumerate_generators(const HeegaardDiagram& d);

int cycle_count(const HeegaardDiagram& d, const Generator& g);

std::vector<std::string> check_nice(const HeegaardDiagram& d);

Generator eh_generator(const HeegaardDiagram& d);

std::string generator_name(const HeegaardDiagram& d, const Generator& g);

} // namespace atc
