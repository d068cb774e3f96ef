#include "atcalc/openbook.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "atcalc/rational.hpp"

namespace atc {

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::runtime_error("unknown field \"" + it.key() + "\" in " + where);
}

int get_int(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw std::runtime_error(where + ": \"" + key + "\" missing or not an integer");
    return j[key].get<int>();
}

} // namespace

PartialOpenBook parse_pob(const nlohmann::json& j) {
    if (!j.is_object()) throw std::runtime_error("open book file must be a JSON object");
    require_keys(j, {"vertices", "edges", "monodromy"}, "open book");
    for (const char* k : {"vertices", "edges", "monodromy"})
        if (!j.contains(k) || !j[k].is_array())
            throw std::runtime_error(std::string("open book: \"") + k + "\" missing or not an array");

    PartialOpenBook pob;
    for (auto& vj : j["vertices"]) {
        if (!vj.is_object()) throw std::runtime_error("vertex entry must be an object");
        require_keys(vj, {"id", "ports"}, "vertex");
        if (!vj.contains("id") || !vj["id"].is_string())
            throw std::runtime_error("vertex missing string \"id\"");
        PobVertex v;
        v.id = vj["id"].get<std::string>();
        if (!vj.contains("ports") || !vj["ports"].is_array())
            throw std::runtime_error("vertex \"" + v.id + "\": \"ports\" missing or not an array");
        for (auto& pj : vj["ports"]) {
            if (!pj.is_array() || pj.size() != 2 || !pj[0].is_string() || !pj[1].is_number_integer())
                throw std::runtime_error("vertex \"" + v.id + "\": ports must be [edge, end] pairs");
            int end = pj[1].get<int>();
            if (end != 0 && end != 1)
                throw std::runtime_error("vertex \"" + v.id + "\": port end must be 0 or 1");
            v.ports.push_back({pj[0].get<std::string>(), end});
        }
        pob.vertices.push_back(std::move(v));
    }
    for (auto& ej : j["edges"]) {
        if (!ej.is_object()) throw std::runtime_error("edge entry must be an object");
        require_keys(ej, {"id", "in_p", "arcs"}, "edge");
        if (!ej.contains("id") || !ej["id"].is_string())
            throw std::runtime_error("edge missing string \"id\"");
        PobEdge e;
        e.id = ej["id"].get<std::string>();
        if (!ej.contains("in_p") || !ej["in_p"].is_boolean())
            throw std::runtime_error("edge \"" + e.id + "\": \"in_p\" missing or not a boolean");
        e.in_p = ej["in_p"].get<bool>();
        e.arcs = get_int(ej, "arcs", "edge \"" + e.id + "\"");
        if (e.arcs < 0) throw std::runtime_error("edge \"" + e.id + "\": negative arc count");
        pob.edges.push_back(std::move(e));
    }
    for (auto& wj : j["monodromy"]) {
        if (!wj.is_object()) throw std::runtime_error("monodromy entry must be an object");
        require_keys(wj, {"edge", "arc", "path"}, "monodromy entry");
        MonodromyWalk w;
        if (!wj.contains("edge") || !wj["edge"].is_string())
            throw std::runtime_error("monodromy entry missing string \"edge\"");
        w.edge = wj["edge"].get<std::string>();
        w.arc = get_int(wj, "arc", "walk on \"" + w.edge + "\"");
        std::string name = w.edge + "." + std::to_string(w.arc);
        if (!wj.contains("path") || !wj["path"].is_array())
            throw std::runtime_error("walk " + name + ": \"path\" missing or not an array");
        for (auto& sj : wj["path"]) {
            if (!sj.is_object()) throw std::runtime_error("walk " + name + ": steps must be objects");
            WalkStep s;
            if (sj.contains("terminate")) {
                require_keys(sj, {"terminate"}, "walk step");
                if (!sj["terminate"].is_boolean() || !sj["terminate"].get<bool>())
                    throw std::runtime_error("walk " + name + ": \"terminate\" must be true when present");
                s.kind = WalkStep::Kind::terminate;
            } else if (sj.contains("end")) {
                require_keys(sj, {"end", "slot"}, "walk step");
                s.kind = WalkStep::Kind::leave_band;
                s.end = get_int(sj, "end", "walk " + name);
                if (s.end != 0 && s.end != 1)
                    throw std::runtime_error("walk " + name + ": \"end\" must be 0 or 1");
                s.slot = get_int(sj, "slot", "walk " + name);
            } else if (sj.contains("port")) {
                require_keys(sj, {"port", "slot"}, "walk step");
                s.kind = WalkStep::Kind::leave_vertex;
                s.port = get_int(sj, "port", "walk " + name);
                s.slot = get_int(sj, "slot", "walk " + name);
            } else {
                throw std::runtime_error("walk " + name + ": step needs \"end\", \"port\", or \"terminate\"");
            }
            w.path.push_back(s);
        }
        pob.monodromy.push_back(std::move(w));
    }
    return pob;
}

namespace {

[[noreturn]] void not_embeddable(const std::string& detail) {
    throw std::runtime_error("h image not embeddable as stated: " + detail);
}

Rational rdiv(const Rational& a, const Rational& b) { return a * Rational(b.den, b.num); }

/* one passage of a strand through a band-end attachment circle */
struct Traversal {
    int edge = -1, end = 0, slot = 0;
    Rational y; /* height on the end wall, known once slot ranks are fixed */
};

/* endpoint of a strand segment inside a band rectangle */
struct BandPos {
    Rational x, y;
    int trav = -1; /* set when the endpoint sits on an end wall */
};

struct BandChord {
    int edge = -1;
    bool top = false; /* page copy: bottom tile carries h(a), top tile the pushoff */
    int beta = -1;
    BandPos a, b;           /* in traversal direction */
    std::vector<int> cross; /* crossing ids, in traversal direction */
};

struct VertexChord {
    int vertex = -1;
    int a = -1, b = -1; /* traversal ids */
};

struct Crossing {
    int band = -1, cocore = -1; /* alpha side: cocore of an arc of `band` */
    int beta = -1;              /* curve of the strand that crosses it */
    bool top = false;
    Rational y;
    std::string id;
};

struct WallPiece {
    Rational lo, hi;
    int face = -1;
};

/* Each band of the spine becomes a rectangle [0, 4k+4] x [0, 1] (k arcs):
   arc j has its cocore vertical at x = 4(j+1), its launch mark at (4j+3, 1)
   and its terminal mark at (4j+5, 0). Strand segments are drawn taut, so
   every crossing with a cocore has an exact rational height. Faces come
   from cutting each rectangle at the cocores and splitting the columns
   along the strand pieces; gluing the tiles back along their shared wall
   pieces yields the regions of the diagram. */
struct Assembler {
    const PartialOpenBook& pob;

    std::map<std::string, int> edge_of;
    std::vector<std::array<std::pair<int, int>, 2>> attach; /* edge, end -> (vertex, port) */
    std::vector<int> curve_of_edge; /* first curve number of a P edge */
    std::vector<int> p_edges;
    std::vector<int> curve_edge, curve_arc;
    int n_curves = 0;

    std::vector<Traversal> travs;
    std::map<std::pair<int, int>, std::vector<int>> end_travs; /* (edge,end) -> trav ids, slot order */

    std::vector<BandChord> chords;
    std::vector<VertexChord> vchords;
    std::map<int, int> vchord_of;            /* traversal -> vertex chord */
    std::vector<std::vector<int>> walk_cross; /* per curve: crossing ids in walk order */
    std::vector<Crossing> crossings;

    int n_faces = 0;
    std::vector<bool> face_suture;
    std::vector<std::pair<int, int>> glue; /* one entry per glue segment */
    /* (edge, 0 side+ | 1 side-, lo, hi) -> the two faces along that piece */
    std::map<std::tuple<int, int, long long, long long>, std::vector<int>> side_glue;
    std::map<std::pair<int, int>, std::vector<WallPiece>> end_pieces;   /* bottom band ends */
    std::map<std::pair<int, int>, std::vector<int>> port_pieces;        /* vertex ports, ccw */
    /* (top?, edge, cocore, 0 left column | 1 right column) -> wall pieces */
    std::map<std::tuple<bool, int, int, int>, std::vector<WallPiece>> cocore_sides;

    explicit Assembler(const PartialOpenBook& p) : pob(p) {}

    std::string curve_label(int c) const {
        return pob.edges[std::size_t(curve_edge[std::size_t(c)])].id + "." +
               std::to_string(curve_arc[std::size_t(c)]);
    }

    int new_face() {
        face_suture.push_back(false);
        return n_faces++;
    }

    void index_graph() {
        for (std::size_t i = 0; i < pob.edges.size(); ++i)
            if (!edge_of.emplace(pob.edges[i].id, int(i)).second)
                throw std::runtime_error("duplicate edge id \"" + pob.edges[i].id + "\"");
        attach.assign(pob.edges.size(),
                      {std::pair<int, int>{-1, -1}, std::pair<int, int>{-1, -1}});
        std::set<std::string> vids;
        for (std::size_t v = 0; v < pob.vertices.size(); ++v) {
            if (!vids.insert(pob.vertices[v].id).second)
                throw std::runtime_error("duplicate vertex id \"" + pob.vertices[v].id + "\"");
            for (std::size_t i = 0; i < pob.vertices[v].ports.size(); ++i) {
                const auto& [eid, end] = pob.vertices[v].ports[i];
                auto it = edge_of.find(eid);
                if (it == edge_of.end())
                    throw std::runtime_error("vertex \"" + pob.vertices[v].id +
                                             "\" references unknown edge \"" + eid + "\"");
                auto& slot = attach[std::size_t(it->second)][std::size_t(end)];
                if (slot.first != -1)
                    throw std::runtime_error("end " + std::to_string(end) + " of edge \"" + eid +
                                             "\" attached twice");
                slot = {int(v), int(i)};
            }
        }
        for (std::size_t e = 0; e < pob.edges.size(); ++e) {
            for (int end = 0; end < 2; ++end)
                if (attach[e][std::size_t(end)].first == -1)
                    throw std::runtime_error("end " + std::to_string(end) + " of edge \"" +
                                             pob.edges[e].id + "\" is not attached to any vertex");
            if (pob.edges[e].in_p && pob.edges[e].arcs == 0)
                throw std::runtime_error("arcs not containing a basis: edge \"" + pob.edges[e].id +
                                         "\" lies in P but carries no arcs");
            if (!pob.edges[e].in_p && pob.edges[e].arcs != 0)
                throw std::runtime_error("edge \"" + pob.edges[e].id +
                                         "\" carries arcs but is not in P");
        }
        curve_of_edge.assign(pob.edges.size(), -1);
        for (std::size_t e = 0; e < pob.edges.size(); ++e) {
            if (!pob.edges[e].in_p) continue;
            p_edges.push_back(int(e));
            curve_of_edge[e] = n_curves;
            for (int j = 0; j < pob.edges[e].arcs; ++j) {
                curve_edge.push_back(int(e));
                curve_arc.push_back(j);
                ++n_curves;
            }
        }
    }

    int new_traversal(int edge, int end, int slot) {
        travs.push_back({edge, end, slot, Rational()});
        end_travs[{edge, end}].push_back(int(travs.size()) - 1);
        return int(travs.size()) - 1;
    }

    void simulate_walks() {
        walk_cross.assign(std::size_t(n_curves), {});
        std::set<std::pair<int, int>> seen;
        for (const auto& w : pob.monodromy) {
            std::string name = w.edge + "." + std::to_string(w.arc);
            auto eit = edge_of.find(w.edge);
            if (eit == edge_of.end())
                throw std::runtime_error("monodromy names unknown edge \"" + w.edge + "\"");
            int e = eit->second;
            if (!pob.edges[std::size_t(e)].in_p)
                throw std::runtime_error("walk " + name + ": edge is not in P");
            if (w.arc < 0 || w.arc >= pob.edges[std::size_t(e)].arcs)
                throw std::runtime_error("walk " + name + ": arc index out of range");
            if (!seen.insert({e, w.arc}).second)
                throw std::runtime_error("two walks for arc " + name);
            int beta = curve_of_edge[std::size_t(e)] + w.arc;

            bool in_band = true, done = false;
            int band = e, vertex = -1, came_by = -1;
            BandPos pos{Rational(4 * w.arc + 3), Rational(1), -1};
            for (const WalkStep& s : w.path) {
                if (done) throw std::runtime_error("walk " + name + ": steps after terminate");
                switch (s.kind) {
                case WalkStep::Kind::terminate:
                    if (!in_band || band != e)
                        throw std::runtime_error("walk " + name + ": terminate outside the home band");
                    chords.push_back({band, false, beta, pos,
                                      BandPos{Rational(4 * w.arc + 5), Rational(0), -1}, {}});
                    done = true;
                    break;
                case WalkStep::Kind::leave_band: {
                    if (!in_band)
                        throw std::runtime_error("walk " + name + ": \"end\" step while at a vertex");
                    int t = new_traversal(band, s.end, s.slot);
                    chords.push_back({band, false, beta, pos, BandPos{Rational(), Rational(), t}, {}});
                    vertex = attach[std::size_t(band)][std::size_t(s.end)].first;
                    in_band = false;
                    came_by = t;
                    break;
                }
                case WalkStep::Kind::leave_vertex: {
                    if (in_band)
                        throw std::runtime_error("walk " + name + ": \"port\" step while inside a band");
                    const auto& ports = pob.vertices[std::size_t(vertex)].ports;
                    if (s.port < 0 || std::size_t(s.port) >= ports.size())
                        throw std::runtime_error("walk " + name + ": port index out of range at vertex \"" +
                                                 pob.vertices[std::size_t(vertex)].id + "\"");
                    int t = new_traversal(edge_of.at(ports[std::size_t(s.port)].first),
                                          ports[std::size_t(s.port)].second, s.slot);
                    vchords.push_back({vertex, came_by, t});
                    in_band = true;
                    band = travs[std::size_t(t)].edge;
                    pos = BandPos{Rational(), Rational(), t};
                    break;
                }
                }
            }
            if (!done) throw std::runtime_error("walk " + name + ": path does not terminate");
        }
        for (int e : p_edges)
            for (int j = 0; j < pob.edges[std::size_t(e)].arcs; ++j)
                if (!seen.count({e, j}))
                    throw std::runtime_error("no monodromy walk for arc " + pob.edges[std::size_t(e)].id +
                                             "." + std::to_string(j));
        for (std::size_t i = 0; i < vchords.size(); ++i) {
            vchord_of[vchords[i].a] = int(i);
            vchord_of[vchords[i].b] = int(i);
        }
    }

    void assign_ranks() {
        for (auto& [key, tv] : end_travs) {
            std::sort(tv.begin(), tv.end(),
                      [&](int a, int b) { return travs[std::size_t(a)].slot < travs[std::size_t(b)].slot; });
            for (std::size_t r = 0; r + 1 < tv.size(); ++r)
                if (travs[std::size_t(tv[r])].slot == travs[std::size_t(tv[r + 1])].slot)
                    not_embeddable("slot " + std::to_string(travs[std::size_t(tv[r])].slot) +
                                   " used twice on end " + std::to_string(key.second) + " of edge \"" +
                                   pob.edges[std::size_t(key.first)].id + "\"");
            long long m = (long long)tv.size();
            for (std::size_t r = 0; r < tv.size(); ++r) {
                Rational y((long long)r + 1, m + 1);
                travs[std::size_t(tv[r])].y = key.second == 0 ? y : Rational(1) - y;
            }
        }
        auto fix = [&](BandPos& p) {
            if (p.trav < 0) return;
            const Traversal& t = travs[std::size_t(p.trav)];
            p.x = Rational(t.end == 0 ? 0 : 4LL * pob.edges[std::size_t(t.edge)].arcs + 4);
            p.y = t.y;
        };
        for (auto& c : chords) {
            fix(c.a);
            fix(c.b);
        }
    }

    void find_crossings() {
        std::vector<int> counter(std::size_t(n_curves), 0);
        std::set<std::string> ids;
        for (auto& c : chords) {
            int k = pob.edges[std::size_t(c.edge)].arcs;
            if (c.a.x == c.b.x) continue; /* U-turn hugging an end wall */
            bool fwd = c.a.x < c.b.x;
            for (int i = 0; i < k; ++i) {
                int m = fwd ? i : k - 1 - i;
                Rational X(4 * (m + 1));
                Rational lo = fwd ? c.a.x : c.b.x, hi = fwd ? c.b.x : c.a.x;
                if (!(lo < X && X < hi)) continue;
                Crossing cr;
                cr.band = c.edge;
                cr.cocore = m;
                cr.beta = c.beta;
                cr.y = c.a.y + (c.b.y - c.a.y) * rdiv(X - c.a.x, c.b.x - c.a.x);
                cr.id = curve_label(c.beta) + ".y" + std::to_string(++counter[std::size_t(c.beta)]);
                if (!ids.insert(cr.id).second)
                    throw std::runtime_error("point id collision: \"" + cr.id + "\"");
                c.cross.push_back(int(crossings.size()));
                walk_cross[std::size_t(c.beta)].push_back(int(crossings.size()));
                crossings.push_back(cr);
            }
        }
        /* top tiles: one pushoff per arc, meeting its own cocore once */
        for (int c = 0; c < n_curves; ++c) {
            int e = curve_edge[std::size_t(c)], j = curve_arc[std::size_t(c)];
            Crossing cr;
            cr.band = e;
            cr.cocore = j;
            cr.beta = c;
            cr.top = true;
            cr.y = Rational(1, 2);
            cr.id = curve_label(c) + ".x";
            if (!ids.insert(cr.id).second)
                throw std::runtime_error("point id collision: \"" + cr.id + "\"");
            BandChord pc{e, true, c, BandPos{Rational(4 * j + 3), Rational(1), -1},
                         BandPos{Rational(4 * j + 5), Rational(0), -1}, {int(crossings.size())}};
            crossings.push_back(cr);
            chords.push_back(pc);
        }
    }

    /* chords on one circle are sound iff no two occur in alternation */
    void check_interleave(const std::vector<int>& seq, const std::string& where) const {
        std::map<int, std::pair<int, int>> occ;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            auto it = occ.find(seq[i]);
            if (it == occ.end())
                occ[seq[i]] = {int(i), -1};
            else
                it->second.second = int(i);
        }
        for (auto& [c, o] : occ)
            if (o.second < 0) throw std::logic_error("chord touches a circle only once");
        for (auto i = occ.begin(); i != occ.end(); ++i)
            for (auto j = std::next(i); j != occ.end(); ++j) {
                bool in1 = i->second.first < j->second.first && j->second.first < i->second.second;
                bool in2 = i->second.first < j->second.second && j->second.second < i->second.second;
                if (in1 != in2) not_embeddable("strands cross " + where);
            }
    }

    void check_bands() const {
        for (std::size_t e = 0; e < pob.edges.size(); ++e) {
            Rational W(4LL * pob.edges[e].arcs + 4);
            std::vector<std::pair<std::pair<int, Rational>, int>> marks;
            for (std::size_t ci = 0; ci < chords.size(); ++ci) {
                const auto& c = chords[ci];
                if (c.edge != int(e) || c.top) continue;
                for (const BandPos* p : {&c.a, &c.b}) {
                    std::pair<int, Rational> key;
                    if (p->y == Rational(0)) key = {0, p->x};
                    else if (p->x == W) key = {1, p->y};
                    else if (p->y == Rational(1)) key = {2, Rational(0) - p->x};
                    else key = {3, Rational(0) - p->y};
                    marks.push_back({key, int(ci)});
                }
            }
            std::sort(marks.begin(), marks.end());
            std::vector<int> seq;
            for (auto& m : marks) seq.push_back(m.second);
            check_interleave(seq, "in band \"" + pob.edges[e].id + "\"");
        }
        std::map<std::pair<int, int>, std::vector<Rational>> ys;
        for (auto& cr : crossings)
            if (!cr.top) ys[{cr.band, cr.cocore}].push_back(cr.y);
        for (auto& [key, v] : ys) {
            auto s = v;
            std::sort(s.begin(), s.end());
            for (std::size_t i = 0; i + 1 < s.size(); ++i)
                if (s[i] == s[i + 1])
                    not_embeddable("two strands meet on a cocore of edge \"" +
                                   pob.edges[std::size_t(key.first)].id + "\"");
        }
    }

    void check_vertices() const {
        for (std::size_t v = 0; v < pob.vertices.size(); ++v) {
            std::vector<int> seq;
            for (const auto& [eid, end] : pob.vertices[v].ports) {
                auto it = end_travs.find({edge_of.at(eid), end});
                if (it == end_travs.end()) continue;
                for (int t : it->second) seq.push_back(vchord_of.at(t));
            }
            check_interleave(seq, "at vertex \"" + pob.vertices[v].id + "\"");
        }
    }

    /* boundary mark of a column: even phases are walls (0 bottom, 2 right,
       4 top, 6 left, ccw), odd phases the corners between them */
    struct Pos {
        int phase;
        Rational key;
        Rational coord;
        int sub = -1;
    };

    struct Sub {
        BandPos a, b;
        int col = 0;
    };

    void emit_band_gap(int e, bool top, int k, int col, const Pos& a, const Pos& b, int face) {
        int wall;
        if (a.phase % 2 == 0) wall = a.phase;
        else if (b.phase % 2 == 0) wall = b.phase;
        else wall = a.phase + 1;
        Rational L(4LL * col), R(4LL * col + 4);
        auto coord_on = [&](const Pos& p) -> Rational {
            if (p.sub >= 0) return p.coord;
            switch (wall) {
            case 0: return p.phase == -1 ? L : R;
            case 2: return p.phase == 1 ? Rational(0) : Rational(1);
            case 4: return p.phase == 3 ? R : L;
            default: return p.phase == 5 ? Rational(1) : Rational(0);
            }
        };
        Rational ca = coord_on(a), cb = coord_on(b);
        Rational lo = ca < cb ? ca : cb, hi = ca < cb ? cb : ca;
        if (wall == 0 || wall == 4) {
            if (!top && !pob.edges[std::size_t(e)].in_p) {
                face_suture[std::size_t(face)] = true;
                return;
            }
            if (lo.den != 1 || hi.den != 1) throw std::logic_error("side piece at fractional position");
            side_glue[{e, wall == 4 ? 0 : 1, lo.num, hi.num}].push_back(face);
            return;
        }
        if (wall == 2) {
            if (col < k) {
                cocore_sides[{top, e, col, 0}].push_back({lo, hi, face});
            } else if (top) {
                face_suture[std::size_t(face)] = true;
            } else {
                end_pieces[{e, 1}].push_back({lo, hi, face});
            }
            return;
        }
        if (col > 0) {
            cocore_sides[{top, e, col - 1, 1}].push_back({lo, hi, face});
        } else if (top) {
            face_suture[std::size_t(face)] = true;
        } else {
            end_pieces[{e, 0}].push_back({lo, hi, face});
        }
    }

    void build_band_column(int e, bool top, int k, int col, const std::vector<Sub>& subs) {
        Rational L(4LL * col), R(4LL * col + 4);
        std::vector<Pos> ps;
        for (int corner : {-1, 1, 3, 5}) ps.push_back({corner, Rational(0), Rational(0), -1});
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (subs[i].col != col) continue;
            for (const BandPos* p : {&subs[i].a, &subs[i].b}) {
                if (p->y == Rational(0)) ps.push_back({0, p->x, p->x, int(i)});
                else if (p->y == Rational(1)) ps.push_back({4, Rational(0) - p->x, p->x, int(i)});
                else if (p->x == R) ps.push_back({2, p->y, p->y, int(i)});
                else if (p->x == L) ps.push_back({6, Rational(0) - p->y, p->y, int(i)});
                else throw std::logic_error("strand endpoint off the column boundary");
            }
        }
        std::sort(ps.begin(), ps.end(), [](const Pos& a, const Pos& b) {
            if (a.phase != b.phase) return a.phase < b.phase;
            return a.key < b.key;
        });
        std::vector<int> stk;
        std::map<int, int> inside;
        int first = new_face(), cur = first;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (ps[i].sub >= 0) {
                auto it = inside.find(ps[i].sub);
                if (it == inside.end()) {
                    stk.push_back(cur);
                    inside[ps[i].sub] = cur = new_face();
                } else {
                    if (cur != it->second) throw std::logic_error("strand nesting out of balance");
                    cur = stk.back();
                    stk.pop_back();
                }
            }
            emit_band_gap(e, top, k, col, ps[i], ps[(i + 1) % ps.size()], cur);
        }
        if (cur != first || !stk.empty()) throw std::logic_error("strand nesting out of balance");
    }

    void build_band_tile(int e, bool top) {
        int k = pob.edges[std::size_t(e)].arcs;
        std::vector<Sub> subs;
        for (const auto& c : chords) {
            if (c.edge != e || c.top != top) continue;
            std::vector<BandPos> pts;
            pts.push_back(c.a);
            for (int ci : c.cross)
                pts.push_back(BandPos{Rational(4 * (crossings[std::size_t(ci)].cocore + 1)),
                                      crossings[std::size_t(ci)].y, -1});
            pts.push_back(c.b);
            for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                Sub s{pts[i], pts[i + 1], 0};
                if (s.a.x == s.b.x) {
                    s.col = s.a.x.num == 0 ? 0 : k;
                } else {
                    Rational mid = (s.a.x + s.b.x) * Rational(1, 2);
                    s.col = int(std::min<long long>(mid.num / (4 * mid.den), k));
                }
                subs.push_back(s);
            }
        }
        for (int col = 0; col <= k; ++col) build_band_column(e, top, k, col, subs);
    }

    void build_vertex_tile(int v) {
        const auto& ports = pob.vertices[std::size_t(v)].ports;
        struct VPos {
            int port, kind; /* kind 0 port start, 1 traversal, 2 port end */
            int trav = -1;
        };
        std::vector<VPos> ps;
        for (std::size_t i = 0; i < ports.size(); ++i) {
            ps.push_back({int(i), 0, -1});
            auto it = end_travs.find({edge_of.at(ports[i].first), ports[i].second});
            if (it != end_travs.end())
                for (int t : it->second) ps.push_back({int(i), 1, t});
            ps.push_back({int(i), 2, -1});
        }
        if (ps.empty()) {
            face_suture[std::size_t(new_face())] = true;
            return;
        }
        std::vector<int> stk;
        std::map<int, int> inside;
        int first = new_face(), cur = first;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (ps[i].kind == 1) {
                int vc = vchord_of.at(ps[i].trav);
                auto it = inside.find(vc);
                if (it == inside.end()) {
                    stk.push_back(cur);
                    inside[vc] = cur = new_face();
                } else {
                    if (cur != it->second) throw std::logic_error("strand nesting out of balance");
                    cur = stk.back();
                    stk.pop_back();
                }
            }
            const VPos& q = ps[(i + 1) % ps.size()];
            if (ps[i].port == q.port && ps[i].kind != 2 && q.kind != 0)
                port_pieces[{v, ps[i].port}].push_back(cur);
            else
                face_suture[std::size_t(cur)] = true;
        }
        if (cur != first || !stk.empty()) throw std::logic_error("strand nesting out of balance");
    }

    void build_faces() {
        for (std::size_t e = 0; e < pob.edges.size(); ++e) build_band_tile(int(e), false);
        for (std::size_t v = 0; v < pob.vertices.size(); ++v) build_vertex_tile(int(v));
        for (int e : p_edges) build_band_tile(e, true);
    }

    void glue_all() {
        for (auto& [key, faces] : side_glue) {
            (void)key;
            if (faces.size() != 2) throw std::logic_error("side piece does not pair up");
            glue.push_back({faces[0], faces[1]});
        }
        for (auto& [key, pieces] : end_pieces) {
            auto sorted = pieces;
            std::sort(sorted.begin(), sorted.end(),
                      [](const WallPiece& a, const WallPiece& b) { return a.lo < b.lo; });
            const auto& vp = port_pieces.at(attach[std::size_t(key.first)][std::size_t(key.second)]);
            if (sorted.size() != vp.size()) throw std::logic_error("attachment pieces do not pair up");
            int m1 = int(sorted.size());
            for (int t = 0; t < m1; ++t)
                glue.push_back({sorted[std::size_t(t)].face,
                                vp[std::size_t(key.second == 0 ? t : m1 - 1 - t)]});
        }
    }

    HeegaardDiagram emit() {
        std::vector<int> parent(static_cast<std::size_t>(n_faces));
        for (int i = 0; i < n_faces; ++i) parent[std::size_t(i)] = i;
        std::function<int(int)> find = [&](int x) {
            while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
            return x;
        };
        for (auto& [a, b] : glue) parent[std::size_t(find(a))] = find(b);

        /* regions ordered by their smallest face */
        std::map<int, int> region_of_root;
        std::vector<int> region_of_face(static_cast<std::size_t>(n_faces));
        int nr = 0;
        for (int f = 0; f < n_faces; ++f) {
            int r = find(f);
            auto it = region_of_root.find(r);
            if (it == region_of_root.end()) it = region_of_root.emplace(r, nr++).first;
            region_of_face[std::size_t(f)] = it->second;
        }
        std::vector<int> chi(std::size_t(nr), 0), base(std::size_t(nr), 0);
        std::vector<bool> bdry(std::size_t(nr), false);
        for (int f = 0; f < n_faces; ++f) {
            chi[std::size_t(region_of_face[std::size_t(f)])] += 1;
            if (face_suture[std::size_t(f)]) bdry[std::size_t(region_of_face[std::size_t(f)])] = true;
        }
        for (auto& [a, b] : glue) {
            (void)b;
            chi[std::size_t(region_of_face[std::size_t(a)])] -= 1;
        }
        for (int e : p_edges)
            for (int g = 1; g < pob.edges[std::size_t(e)].arcs; ++g) {
                auto it = side_glue.find({e, 0, 4LL * g, 4LL * g + 3});
                if (it == side_glue.end() || it->second.size() != 2)
                    throw std::logic_error("missing page gap piece");
                base[std::size_t(region_of_face[std::size_t(it->second[1])])] += 1;
            }

        auto wall_face = [&](const Crossing& cr, int side, bool above) {
            const auto& pieces = cocore_sides.at({cr.top, cr.band, cr.cocore, side});
            for (const auto& p : pieces)
                if (above ? p.lo == cr.y : p.hi == cr.y) return p.face;
            throw std::logic_error("crossing not on its cocore wall");
        };

        HeegaardDiagram d;
        d.alpha.assign(std::size_t(n_curves), {});
        d.beta.assign(std::size_t(n_curves), {});
        std::map<std::pair<int, int>, std::vector<std::pair<Rational, std::string>>> on_cocore;
        for (const auto& cr : crossings)
            if (!cr.top) on_cocore[{cr.band, cr.cocore}].push_back({cr.y, cr.id});
        for (int c = 0; c < n_curves; ++c) {
            std::string x = curve_label(c) + ".x";
            d.alpha[std::size_t(c)].push_back(x);
            d.beta[std::size_t(c)].push_back(x);
            auto& oc = on_cocore[{curve_edge[std::size_t(c)], curve_arc[std::size_t(c)]}];
            std::sort(oc.begin(), oc.end(),
                      [](const auto& a, const auto& b) { return b.first < a.first; });
            for (auto& [y, id] : oc) {
                (void)y;
                d.alpha[std::size_t(c)].push_back(id);
            }
            const auto& wc = walk_cross[std::size_t(c)];
            for (auto it = wc.rbegin(); it != wc.rend(); ++it)
                d.beta[std::size_t(c)].push_back(crossings[std::size_t(*it)].id);
        }

        for (const auto& cr : crossings) {
            int ul = wall_face(cr, 0, true), ll = wall_face(cr, 0, false);
            int ur = wall_face(cr, 1, true), lr = wall_face(cr, 1, false);
            IntersectionPoint p;
            p.id = cr.id;
            p.alpha = curve_of_edge[std::size_t(cr.band)] + cr.cocore;
            p.beta = cr.beta;
            /* the bottom tile carries the page with its outward orientation,
               the top tile the reversed copy */
            int ne = cr.top ? ur : ul, nw = cr.top ? lr : ll;
            int sw = cr.top ? ll : lr, se = cr.top ? ul : ur;
            p.quad[std::size_t(Quadrant::NE)] = "R" + std::to_string(region_of_face[std::size_t(ne)]);
            p.quad[std::size_t(Quadrant::NW)] = "R" + std::to_string(region_of_face[std::size_t(nw)]);
            p.quad[std::size_t(Quadrant::SW)] = "R" + std::to_string(region_of_face[std::size_t(sw)]);
            p.quad[std::size_t(Quadrant::SE)] = "R" + std::to_string(region_of_face[std::size_t(se)]);
            d.points.push_back(std::move(p));
        }
        std::sort(d.points.begin(), d.points.end(),
                  [](const IntersectionPoint& a, const IntersectionPoint& b) { return a.id < b.id; });

        for (int r = 0; r < nr; ++r) {
            Region reg;
            reg.id = "R" + std::to_string(r);
            reg.chi = chi[std::size_t(r)];
            reg.on_boundary = bdry[std::size_t(r)];
            reg.basepoints = base[std::size_t(r)];
            d.regions.push_back(std::move(reg));
        }
        for (const auto& p : d.points)
            for (int q = 0; q < 4; ++q) {
                int r = std::stoi(p.quad[std::size_t(q)].substr(1));
                d.regions[std::size_t(r)].corners.push_back({p.id, Quadrant(q)});
            }

        std::vector<std::string> eh;
        for (int c = 0; c < n_curves; ++c) eh.push_back(curve_label(c) + ".x");
        d.eh = std::move(eh);
        d.build_index();
        return d;
    }
};

} // namespace

HeegaardDiagram assemble_from_partial_open_book(const PartialOpenBook& pob) {
    Assembler a(pob);
    a.index_graph();
    a.simulate_walks();
    a.assign_ranks();
    a.find_crossings();
    a.check_bands();
    a.check_vertices();
    a.build_faces();
    a.glue_all();
    return a.emit();
}

} // namespace atc
