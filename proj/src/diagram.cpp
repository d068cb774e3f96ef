#include "atcalc/diagram.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace atc {

std::optional<Quadrant> quadrant_from(const std::string& s) {
    if (s == "NE") return Quadrant::NE;
    if (s == "NW") return Quadrant::NW;
    if (s == "SW") return Quadrant::SW;
    if (s == "SE") return Quadrant::SE;
    return std::nullopt;
}

void HeegaardDiagram::build_index() {
    point_index.clear();
    region_index.clear();
    for (std::size_t i = 0; i < points.size(); ++i)
        point_index[points[i].id] = int(i);
    for (std::size_t i = 0; i < regions.size(); ++i)
        region_index[regions[i].id] = int(i);
}

const IntersectionPoint& HeegaardDiagram::point(const std::string& id) const {
    auto it = point_index.find(id);
    if (it == point_index.end()) throw std::out_of_range("unknown point: " + id);
    return points[std::size_t(it->second)];
}

const Region& HeegaardDiagram::region(const std::string& id) const {
    auto it = region_index.find(id);
    if (it == region_index.end()) throw std::out_of_range("unknown region: " + id);
    return regions[std::size_t(it->second)];
}

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::runtime_error("unknown field \"" + it.key() + "\" in " + where);
}

std::vector<std::vector<std::string>> parse_words(const nlohmann::json& j,
                                                  const std::string& where) {
    if (!j.is_array()) throw std::runtime_error(where + " must be an array");
    std::vector<std::vector<std::string>> out;
    for (auto& w : j) {
        if (!w.is_array()) throw std::runtime_error(where + " entries must be arrays");
        std::vector<std::string> word;
        for (auto& p : w) {
            if (!p.is_string()) throw std::runtime_error(where + " entries must list point ids");
            word.push_back(p.get<std::string>());
        }
        out.push_back(std::move(word));
    }
    return out;
}

} // namespace

HeegaardDiagram parse_diagram(const nlohmann::json& j) {
    if (!j.is_object()) throw std::runtime_error("diagram file must be a JSON object");
    require_keys(j, {"alpha", "beta", "points", "regions", "eh"}, "diagram");
    for (const char* k : {"alpha", "beta", "points", "regions"})
        if (!j.contains(k))
            throw std::runtime_error(std::string("diagram missing field \"") + k + "\"");

    HeegaardDiagram d;
    d.alpha = parse_words(j["alpha"], "\"alpha\"");
    d.beta = parse_words(j["beta"], "\"beta\"");

    if (!j["points"].is_object()) throw std::runtime_error("\"points\" must be an object");
    for (auto it = j["points"].begin(); it != j["points"].end(); ++it) {
        const auto& pj = it.value();
        if (!pj.is_object()) throw std::runtime_error("point entry must be an object");
        require_keys(pj, {"alpha", "beta", "quadrants"}, "point \"" + it.key() + "\"");
        for (const char* k : {"alpha", "beta", "quadrants"})
            if (!pj.contains(k))
                throw std::runtime_error("point \"" + it.key() + "\" missing \"" + k + "\"");
        IntersectionPoint p;
        p.id = it.key();
        if (!pj["alpha"].is_number_integer() || !pj["beta"].is_number_integer())
            throw std::runtime_error("point \"" + p.id + "\": curve indices must be integers");
        p.alpha = pj["alpha"].get<int>();
        p.beta = pj["beta"].get<int>();
        const auto& qj = pj["quadrants"];
        if (!qj.is_object()) throw std::runtime_error("point \"" + p.id + "\": \"quadrants\" must be an object");
        require_keys(qj, {"NE", "NW", "SW", "SE"}, "quadrants of \"" + p.id + "\"");
        for (const char* k : {"NE", "NW", "SW", "SE"}) {
            if (!qj.contains(k) || !qj[k].is_string())
                throw std::runtime_error("point \"" + p.id + "\": quadrant \"" + k + "\" missing or not a region id");
            p.quad[std::size_t(*quadrant_from(k))] = qj[k].get<std::string>();
        }
        d.points.push_back(std::move(p));
    }
    std::sort(d.points.begin(), d.points.end(),
              [](const IntersectionPoint& a, const IntersectionPoint& b) { return a.id < b.id; });

    if (!j["regions"].is_array()) throw std::runtime_error("\"regions\" must be an array");
    for (auto& rj : j["regions"]) {
        if (!rj.is_object()) throw std::runtime_error("region entry must be an object");
        require_keys(rj, {"id", "chi", "corners", "on_boundary", "basepoints"}, "region");
        for (const char* k : {"id", "chi", "corners", "on_boundary", "basepoints"})
            if (!rj.contains(k)) throw std::runtime_error("region missing field \"" + std::string(k) + "\"");
        Region r;
        if (!rj["id"].is_string()) throw std::runtime_error("region id must be a string");
        r.id = rj["id"].get<std::string>();
        if (!rj["chi"].is_number_integer()) throw std::runtime_error("region \"" + r.id + "\": chi must be an integer");
        r.chi = rj["chi"].get<int>();
        if (!rj["on_boundary"].is_boolean()) throw std::runtime_error("region \"" + r.id + "\": on_boundary must be a boolean");
        r.on_boundary = rj["on_boundary"].get<bool>();
        if (!rj["basepoints"].is_number_integer())
            throw std::runtime_error("region \"" + r.id + "\": basepoints must be an integer");
        r.basepoints = rj["basepoints"].get<int>();
        if (!rj["corners"].is_array()) throw std::runtime_error("region \"" + r.id + "\": corners must be an array");
        for (auto& cj : rj["corners"]) {
            if (!cj.is_array() || cj.size() != 2 || !cj[0].is_string() || !cj[1].is_string())
                throw std::runtime_error("region \"" + r.id + "\": corner entries must be [point, quadrant]");
            auto q = quadrant_from(cj[1].get<std::string>());
            if (!q) throw std::runtime_error("region \"" + r.id + "\": bad quadrant label \"" +
                                             cj[1].get<std::string>() + "\"");
            r.corners.push_back({cj[0].get<std::string>(), *q});
        }
        d.regions.push_back(std::move(r));
    }

    if (j.contains("eh")) {
        if (!j["eh"].is_array()) throw std::runtime_error("\"eh\" must be an array of point ids");
        std::vector<std::string> eh;
        for (auto& p : j["eh"]) {
            if (!p.is_string()) throw std::runtime_error("\"eh\" must be an array of point ids");
            eh.push_back(p.get<std::string>());
        }
        d.eh = std::move(eh);
    }

    d.build_index();
    return d;
}

ValidationReport validate_diagram(const HeegaardDiagram& d) {
    ValidationReport rep;
    auto bad = [&](const std::string& m) { rep.violations.push_back(m); };

    if (d.alpha.size() != d.beta.size())
        bad("diagram not balanced: " + std::to_string(d.alpha.size()) + " alpha vs " +
            std::to_string(d.beta.size()) + " beta curves");

    std::set<std::string> region_ids;
    for (auto& r : d.regions)
        if (!region_ids.insert(r.id).second) bad("duplicate region id \"" + r.id + "\"");

    for (auto& p : d.points) {
        if (p.alpha < 0 || std::size_t(p.alpha) >= d.alpha.size())
            bad("point \"" + p.id + "\": alpha index out of range");
        if (p.beta < 0 || std::size_t(p.beta) >= d.beta.size())
            bad("point \"" + p.id + "\": beta index out of range");
        for (int q = 0; q < 4; ++q)
            if (!d.region_index.count(p.quad[std::size_t(q)]))
                bad("point \"" + p.id + "\": " + quadrant_name(Quadrant(q)) +
                    " quadrant names missing region \"" + p.quad[std::size_t(q)] + "\"");
    }

    /* every word entry exists and names the curve; each point appears exactly
       once in the word of its own curve */
    auto check_words = [&](const std::vector<std::vector<std::string>>& words,
                           bool is_alpha) {
        const char* kind = is_alpha ? "alpha" : "beta";
        for (std::size_t c = 0; c < words.size(); ++c) {
            for (auto& id : words[c]) {
                auto it = d.point_index.find(id);
                if (it == d.point_index.end()) {
                    bad(std::string(kind) + " curve " + std::to_string(c) +
                        " lists missing point \"" + id + "\"");
                    continue;
                }
                int idx = is_alpha ? d.points[std::size_t(it->second)].alpha
                                   : d.points[std::size_t(it->second)].beta;
                if (idx != int(c))
                    bad(std::string(kind) + " curve " + std::to_string(c) +
                        " lists point \"" + id + "\" whose " + kind + " index is " +
                        std::to_string(idx));
            }
        }
        for (auto& p : d.points) {
            int c = is_alpha ? p.alpha : p.beta;
            if (c < 0 || std::size_t(c) >= words.size()) continue;
            std::size_t n = 0;
            for (auto& id : words[std::size_t(c)])
                if (id == p.id) ++n;
            if (n != 1)
                bad("point \"" + p.id + "\" occurs " + std::to_string(n) +
                    " times in its " + kind + " curve word");
        }
    };
    check_words(d.alpha, true);
    check_words(d.beta, false);

    /* quadrant incidence vs region corner words (multiset agreement) */
    std::map<std::string, std::multiset<std::pair<std::string, int>>> expected;
    for (auto& p : d.points)
        for (int q = 0; q < 4; ++q)
            expected[p.quad[std::size_t(q)]].insert({p.id, q});
    for (auto& r : d.regions) {
        std::multiset<std::pair<std::string, int>> listed;
        for (auto& c : r.corners) {
            if (!d.point_index.count(c.first))
                bad("region \"" + r.id + "\": corner names missing point \"" + c.first + "\"");
            listed.insert({c.first, int(c.second)});
        }
        auto it = expected.find(r.id);
        static const std::multiset<std::pair<std::string, int>> empty;
        const auto& exp = it == expected.end() ? empty : it->second;
        if (listed != exp)
            bad("region \"" + r.id + "\": corner list disagrees with point quadrant maps (" +
                std::to_string(listed.size()) + " listed vs " + std::to_string(exp.size()) +
                " from quadrants)");
        if (r.basepoints < 0)
            bad("region \"" + r.id + "\": negative basepoint count");
    }

    if (d.eh) {
        if (d.eh->size() != d.alpha.size())
            bad("eh lists " + std::to_string(d.eh->size()) + " points for " +
                std::to_string(d.alpha.size()) + " alpha curves");
        std::set<int> alphas, betas;
        for (auto& id : *d.eh) {
            auto it = d.point_index.find(id);
            if (it == d.point_index.end()) {
                bad("eh names missing point \"" + id + "\"");
                continue;
            }
            const auto& p = d.points[std::size_t(it->second)];
            if (!alphas.insert(p.alpha).second)
                bad("eh uses alpha curve " + std::to_string(p.alpha) + " twice");
            if (!betas.insert(p.beta).second)
                bad("eh uses beta curve " + std::to_string(p.beta) + " twice");
        }
    }

    return rep;
}

std::vector<Generator> enumerate_generators(const HeegaardDiagram& d) {
    auto rep = validate_diagram(d);
    if (!rep.ok()) throw std::runtime_error("diagram invalid: " + rep.violations.front());

    std::size_t n = d.alpha.size();
    /* points per alpha curve, sorted by id (points vector is id-sorted) */
    std::vector<std::vector<int>> on_alpha(n);
    for (std::size_t i = 0; i < d.points.size(); ++i)
        on_alpha[std::size_t(d.points[i].alpha)].push_back(int(i));

    std::vector<Generator> out;
    std::vector<int> chosen(n, -1);
    std::vector<bool> beta_used(n, false);
    std::function<void(std::size_t)> rec = [&](std::size_t a) {
        if (a == n) {
            Generator g;
            g.pt = chosen;
            out.push_back(std::move(g));
            return;
        }
        for (int pi : on_alpha[a]) {
            int b = d.points[std::size_t(pi)].beta;
            if (beta_used[std::size_t(b)]) continue;
            beta_used[std::size_t(b)] = true;
            chosen[a] = pi;
            rec(a + 1);
            beta_used[std::size_t(b)] = false;
        }
    };
    rec(0);
    return out;
}

int cycle_count(const HeegaardDiagram& d, const Generator& g) {
    std::size_t n = g.pt.size();
    std::vector<int> perm(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
        const auto& p = d.points[std::size_t(g.pt[a])];
        if (std::size_t(p.alpha) != a) throw std::invalid_argument("generator: point on wrong alpha curve");
        if (perm[std::size_t(p.beta)] != -1) throw std::invalid_argument("generator: beta curve used twice");
        perm[std::size_t(p.beta)] = int(a);
    }
    int cycles = 0;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = std::size_t(perm[j]);
        }
    }
    return cycles;
}

std::vector<std::string> check_nice(const HeegaardDiagram& d) {
    std::vector<std::string> out;
    for (auto& r : d.regions) {
        if (r.on_boundary || r.basepoints > 0) continue;
        if (r.chi != 1 || (r.corners.size() != 2 && r.corners.size() != 4))
            out.push_back("region \"" + r.id + "\" is interior and basepoint-free but not a bigon or quadrilateral (chi " +
                          std::to_string(r.chi) + ", " + std::to_string(r.corners.size()) + " corners)");
    }
    return out;
}

Generator eh_generator(const HeegaardDiagram& d) {
    if (!d.eh) throw std::runtime_error("diagram carries no eh mark");
    Generator g;
    g.pt.assign(d.alpha.size(), -1);
    std::vector<bool> beta_used(d.beta.size(), false);
    for (auto& id : *d.eh) {
        const auto& p = d.point(id);
        if (g.pt[std::size_t(p.alpha)] != -1)
            throw std::runtime_error("eh invalid: alpha curve " + std::to_string(p.alpha) + " used twice");
        if (beta_used[std::size_t(p.beta)])
            throw std::runtime_error("eh invalid: beta curve " + std::to_string(p.beta) + " used twice");
        g.pt[std::size_t(p.alpha)] = d.point_index.at(id);
        beta_used[std::size_t(p.beta)] = true;
    }
    for (auto v : g.pt)
        if (v < 0) throw std::runtime_error("eh invalid: not one point per alpha curve");
    return g;
}

std::string generator_name(const HeegaardDiagram& d, const Generator& g) {
    if (g.pt.size() == 1) return d.points[std::size_t(g.pt[0])].id;
    std::string s = "(";
    for (std::size_t i = 0; i < g.pt.size(); ++i) {
        if (i) s += ",";
        s += d.points[std::size_t(g.pt[i])].id;
    }
    s += ")";
    return s;
}

} // namespace atc
