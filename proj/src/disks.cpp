#include "atcalc/disks.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace atc {

namespace {

struct Corner {
    int point; /* index into d.points */
    Quadrant q;
    int sign;  /* +1 to-corner (NW/SE), -1 from-corner (NE/SW) */
};

/* Intrinsic shape data of a validated 0/1 domain. */
struct CandidateShape {
    std::vector<Corner> plus;  /* to-corners */
    std::vector<Corner> minus; /* from-corners */
    DiskShape shape = DiskShape::bigon;
};

/* coverage pattern of a point: bit per quadrant (NE=1, NW=2, SW=4, SE=8) */
unsigned coverage(const HeegaardDiagram& d, const std::vector<char>& in,
                  const IntersectionPoint& p) {
    unsigned m = 0;
    for (int q = 0; q < 4; ++q)
        if (in[std::size_t(d.region_index.at(p.quad[std::size_t(q)]))])
            m |= 1u << q;
    return m;
}

bool adjacent_pair(unsigned m) {
    return m == 3u || m == 6u || m == 12u || m == 9u;
}

/* Validate a connected 0/1 region set as an empty embedded bigon or
   rectangle boundary shape; fills corner data or returns false. */
bool validate_candidate(const HeegaardDiagram& d, const std::vector<char>& in,
                        const std::vector<int>& regs, CandidateShape& out) {
    out.plus.clear();
    out.minus.clear();

    for (std::size_t pi = 0; pi < d.points.size(); ++pi) {
        unsigned m = coverage(d, in, d.points[pi]);
        if (m == 0 || m == 0xF || adjacent_pair(m)) continue;
        if ((m & (m - 1)) != 0) return false; /* diagonal pair or weight 3 */
        int q = m == 1 ? 0 : m == 2 ? 1 : m == 4 ? 2 : 3;
        Corner c{int(pi), Quadrant(q),
                 (Quadrant(q) == Quadrant::NW || Quadrant(q) == Quadrant::SE) ? 1 : -1};
        if (c.sign > 0) out.plus.push_back(c);
        else out.minus.push_back(c);
    }

    if (out.plus.size() != out.minus.size()) return false;
    std::size_t k = out.plus.size();
    if (k != 1 && k != 2) return false;

    const auto& P = d.points;
    if (k == 1) {
        const auto& f = P[std::size_t(out.minus[0].point)];
        const auto& t = P[std::size_t(out.plus[0].point)];
        if (f.alpha != t.alpha || f.beta != t.beta) return false;
        out.shape = DiskShape::bigon;
    } else {
        const auto& f1 = P[std::size_t(out.minus[0].point)];
        const auto& f2 = P[std::size_t(out.minus[1].point)];
        if (f1.alpha == f2.alpha || f1.beta == f2.beta) return false;
        /* to-corners sit at the crossed positions of the transposition */
        std::set<std::pair<int, int>> want = {{f1.alpha, f2.beta}, {f2.alpha, f1.beta}};
        std::set<std::pair<int, int>> got;
        for (auto& c : out.plus)
            got.insert({P[std::size_t(c.point)].alpha, P[std::size_t(c.point)].beta});
        if (got != want) return false;
        out.shape = DiskShape::rectangle;
    }

    /* union must be a disk: e(D) + corners/4 = 1 */
    Domain dom;
    for (int rj : regs) dom.coeff[d.regions[std::size_t(rj)].id] = 1;
    Rational chi = euler_measure(d, dom) + Rational(std::int64_t(2 * k), 4);
    return chi == Rational(1);
}

} // namespace

std::vector<CountedDisk> enumerate_disks(const HeegaardDiagram& d) {
    {
        auto rep = validate_diagram(d);
        if (!rep.ok())
            throw std::runtime_error("diagram invalid: " + rep.violations.front());
        auto nice = check_nice(d);
        if (!nice.empty())
            throw std::runtime_error("diagram not nice: " + nice.front());
        if (!check_admissible(d))
            throw std::runtime_error("diagram not admissible");
    }

    std::size_t nr = d.regions.size();
    std::vector<char> candidate(nr, 0);
    for (std::size_t j = 0; j < nr; ++j)
        candidate[j] = !d.regions[j].on_boundary && d.regions[j].basepoints == 0;

    /* region adjacency across curve segments, from per-point quadrant pairs */
    std::vector<std::set<int>> adj(nr);
    for (auto& p : d.points) {
        static const int pairs[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
        for (auto& pr : pairs) {
            int a = d.region_index.at(p.quad[std::size_t(pr[0])]);
            int b = d.region_index.at(p.quad[std::size_t(pr[1])]);
            if (a != b) { adj[std::size_t(a)].insert(b); adj[std::size_t(b)].insert(a); }
        }
    }

    auto gens = enumerate_generators(d);

    std::vector<CountedDisk> disks;
    std::vector<char> in(nr, 0);
    std::vector<int> regs;

    auto emit = [&](const CandidateShape& cs) {
        std::vector<int> from_alpha, from_pt, to_pt;
        for (auto& c : cs.minus) {
            from_alpha.push_back(d.points[std::size_t(c.point)].alpha);
            from_pt.push_back(c.point);
        }
        to_pt.resize(cs.minus.size());
        for (auto& c : cs.plus) {
            int a = d.points[std::size_t(c.point)].alpha;
            for (std::size_t i = 0; i < from_alpha.size(); ++i)
                if (from_alpha[i] == a) to_pt[i] = c.point;
        }
        Domain dom;
        for (int rj : regs) dom.coeff[d.regions[std::size_t(rj)].id] = 1;

        for (const Generator& u : gens) {
            bool match = true;
            for (std::size_t i = 0; i < from_alpha.size(); ++i)
                if (u.pt[std::size_t(from_alpha[i])] != from_pt[i]) { match = false; break; }
            if (!match) continue;
            /* the disk must be empty: shared coordinates away from it */
            bool clean = true;
            for (int pi : u.pt) {
                bool corner = false;
                for (int f : from_pt)
                    if (f == pi) corner = true;
                if (!corner && coverage(d, in, d.points[std::size_t(pi)]) != 0) {
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;

            Generator v = u;
            for (std::size_t i = 0; i < from_alpha.size(); ++i)
                v.pt[std::size_t(from_alpha[i])] = to_pt[i];

            CountedDisk disk;
            disk.from = u;
            disk.to = v;
            disk.domain = dom;
            disk.shape = cs.shape;
            Rational nsum = generator_measure(d, dom, u) + generator_measure(d, dom, v);
            Rational jp = Rational(2) * nsum - Rational(1) +
                          Rational(cycle_count(d, u) - cycle_count(d, v));
            if (!jp.is_integer() || jp.num < 0 || jp.num % 2 != 0)
                throw std::logic_error("enumerated disk with invalid J+ value " + jp.str());
            disk.j_plus = jp.num;
            disks.push_back(std::move(disk));
        }
    };

    /* connected 0/1 subsets with minimal region index = seed; the forbidden
       set makes each subset appear exactly once */
    std::function<void(int, const std::vector<char>&)> grow =
        [&](int seed, const std::vector<char>& forbidden) {
            CandidateShape cs;
            if (validate_candidate(d, in, regs, cs)) emit(cs);

            std::vector<int> cand;
            std::vector<char> seen(nr, 0);
            for (int rj : regs)
                for (int nb : adj[std::size_t(rj)])
                    if (nb > seed && candidate[std::size_t(nb)] && !in[std::size_t(nb)] &&
                        !forbidden[std::size_t(nb)] && !seen[std::size_t(nb)]) {
                        seen[std::size_t(nb)] = 1;
                        cand.push_back(nb);
                    }
            std::sort(cand.begin(), cand.end());

            std::vector<char> forb = forbidden;
            for (int v : cand) {
                /* at most one bigon region per disk (e-additivity) */
                bool vbig = d.regions[std::size_t(v)].corners.size() == 2;
                if (vbig) {
                    bool has = false;
                    for (int rj : regs)
                        if (d.regions[std::size_t(rj)].corners.size() == 2) has = true;
                    if (has) { forb[std::size_t(v)] = 1; continue; }
                }
                in[std::size_t(v)] = 1;
                regs.push_back(v);
                grow(seed, forb);
                regs.pop_back();
                in[std::size_t(v)] = 0;
                forb[std::size_t(v)] = 1;
            }
        };

    for (std::size_t s = 0; s < nr; ++s) {
        if (!candidate[s]) continue;
        in[s] = 1;
        regs.assign(1, int(s));
        grow(int(s), std::vector<char>(nr, 0));
        in[s] = 0;
    }

    std::sort(disks.begin(), disks.end(), [&](const CountedDisk& a, const CountedDisk& b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.to != b.to) return a.to < b.to;
        return a.domain.coeff < b.domain.coeff;
    });
    return disks;
}

std::int64_t j_plus_index1(const HeegaardDiagram& d, const CountedDisk& disk) {
    Rational mu = maslov_index(d, disk.domain, disk.from, disk.to);
    if (mu != Rational(1))
        throw std::invalid_argument("disk has Maslov index " + mu.str() + ", not 1");
    Rational nsum = generator_measure(d, disk.domain, disk.from) +
                    generator_measure(d, disk.domain, disk.to);
    Rational jp = Rational(2) * nsum - Rational(1) +
                  Rational(cycle_count(d, disk.from) - cycle_count(d, disk.to));
    if (!jp.is_integer())
        throw std::domain_error("J+ is not an integer for this disk");
    return jp.num;
}

SplitDifferential split_differential(const HeegaardDiagram& d) {
    SplitDifferential sd;
    sd.gens = enumerate_generators(d);
    std::map<Generator, std::size_t> gidx;
    for (std::size_t i = 0; i < sd.gens.size(); ++i) gidx[sd.gens[i]] = i;

    auto disks = enumerate_disks(d);
    sd.i_max = 0;
    for (auto& disk : disks)
        sd.i_max = std::max(sd.i_max, std::size_t(disk.j_plus / 2));
    sd.dr.assign(sd.i_max + 1, BitMat(sd.gens.size(), sd.gens.size()));
    for (auto& disk : disks) {
        std::size_t r = std::size_t(disk.j_plus / 2);
        sd.dr[r].flip(gidx.at(disk.to), gidx.at(disk.from));
    }
    return sd;
}

} // namespace atc
