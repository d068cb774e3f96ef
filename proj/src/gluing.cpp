#include "atcalc/gluing.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "atcalc/disks.hpp"

namespace atc {

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::runtime_error("unknown field \"" + it.key() + "\" in " + where);
}

std::map<std::string, std::string> parse_str_map(const nlohmann::json& j,
                                                 const std::string& where) {
    if (!j.is_object()) throw std::runtime_error(where + " must be an object");
    std::map<std::string, std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_string()) throw std::runtime_error(where + " values must be strings");
        out[it.key()] = it.value().get<std::string>();
    }
    return out;
}

std::vector<int> parse_int_list(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array()) throw std::runtime_error(where + " must be an array");
    std::vector<int> out;
    for (auto& v : j) {
        if (!v.is_number_integer()) throw std::runtime_error(where + " entries must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

bool cyclic_equal(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) return false;
    std::size_t n = a.size();
    if (n == 0) return true;
    for (std::size_t r = 0; r < n; ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            if (a[(i + r) % n] != b[i]) ok = false;
        if (ok) return true;
    }
    return false;
}

} // namespace

GluingData parse_gluing(const nlohmann::json& sub, const nlohmann::json& super,
                        const nlohmann::json& map) {
    GluingData g;
    g.sub = parse_diagram(sub);
    g.super = parse_diagram(super);
    if (!map.is_object()) throw std::runtime_error("map file must be a JSON object");
    require_keys(map, {"alpha", "beta", "points", "regions", "xprime"}, "map");
    for (const char* k : {"alpha", "beta", "points", "regions", "xprime"})
        if (!map.contains(k))
            throw std::runtime_error(std::string("map missing field \"") + k + "\"");
    g.alpha_map = parse_int_list(map["alpha"], "\"alpha\"");
    g.beta_map = parse_int_list(map["beta"], "\"beta\"");
    g.point_map = parse_str_map(map["points"], "\"points\"");
    g.region_map = parse_str_map(map["regions"], "\"regions\"");
    if (!map["xprime"].is_array()) throw std::runtime_error("\"xprime\" must be an array");
    for (auto& v : map["xprime"]) {
        if (!v.is_string()) throw std::runtime_error("\"xprime\" entries must be point ids");
        g.xprime.push_back(v.get<std::string>());
    }
    return g;
}

std::vector<std::string> verify_embedding(const GluingData& g) {
    std::vector<std::string> out;
    auto bad = [&](const std::string& m) { out.push_back(m); };

    auto check_curve_map = [&](const std::vector<int>& cm, std::size_t nsub,
                               std::size_t nsuper, const char* kind) {
        if (cm.size() != nsub) {
            bad(std::string(kind) + " map covers " + std::to_string(cm.size()) +
                " of " + std::to_string(nsub) + " curves");
            return false;
        }
        std::set<int> used;
        for (int v : cm) {
            if (v < 0 || std::size_t(v) >= nsuper) {
                bad(std::string(kind) + " map target " + std::to_string(v) + " out of range");
                return false;
            }
            if (!used.insert(v).second) {
                bad(std::string(kind) + " map not injective at " + std::to_string(v));
                return false;
            }
        }
        return true;
    };
    bool curves_ok = check_curve_map(g.alpha_map, g.sub.alpha.size(), g.super.alpha.size(), "alpha") &&
                     check_curve_map(g.beta_map, g.sub.beta.size(), g.super.beta.size(), "beta");

    std::set<std::string> image_points, image_regions;
    for (auto& p : g.sub.points)
        if (!g.point_map.count(p.id)) bad("point \"" + p.id + "\" has no image");
    for (auto& [k, v] : g.point_map) {
        if (!g.sub.point_index.count(k)) bad("point map names missing sub point \"" + k + "\"");
        if (!g.super.point_index.count(v)) bad("point map targets missing super point \"" + v + "\"");
        if (!image_points.insert(v).second) bad("point map not injective at \"" + v + "\"");
    }
    for (auto& r : g.sub.regions)
        if (!g.region_map.count(r.id)) bad("region \"" + r.id + "\" has no image");
    for (auto& [k, v] : g.region_map) {
        if (!g.sub.region_index.count(k)) bad("region map names missing sub region \"" + k + "\"");
        if (!g.super.region_index.count(v)) bad("region map targets missing super region \"" + v + "\"");
        if (!image_regions.insert(v).second) bad("region map not injective at \"" + v + "\"");
    }
    if (!out.empty() || !curves_ok) return out;

    /* quadrant incidence */
    for (auto& p : g.sub.points) {
        const auto& P = g.super.point(g.point_map.at(p.id));
        if (P.alpha != g.alpha_map[std::size_t(p.alpha)])
            bad("point \"" + p.id + "\": image sits on alpha " + std::to_string(P.alpha) +
                ", expected " + std::to_string(g.alpha_map[std::size_t(p.alpha)]));
        if (P.beta != g.beta_map[std::size_t(p.beta)])
            bad("point \"" + p.id + "\": image sits on beta " + std::to_string(P.beta) +
                ", expected " + std::to_string(g.beta_map[std::size_t(p.beta)]));
        for (int q = 0; q < 4; ++q)
            if (g.region_map.at(p.quad[std::size_t(q)]) != P.quad[std::size_t(q)])
                bad("point \"" + p.id + "\": " + quadrant_name(Quadrant(q)) +
                    " quadrant maps to \"" + g.region_map.at(p.quad[std::size_t(q)]) +
                    "\" but image has \"" + P.quad[std::size_t(q)] + "\"");
    }

    /* corner words: image corners at image points, extras only elsewhere */
    for (auto& r : g.sub.regions) {
        const auto& R = g.super.region(g.region_map.at(r.id));
        std::multiset<std::pair<std::string, int>> mapped, found;
        for (auto& c : r.corners)
            mapped.insert({g.point_map.at(c.first), int(c.second)});
        for (auto& c : R.corners)
            if (image_points.count(c.first)) found.insert({c.first, int(c.second)});
        if (mapped != found)
            bad("region \"" + r.id + "\": corner word at image points disagrees with \"" +
                R.id + "\"");
    }

    /* curve orders are preserved up to rotation */
    auto check_words = [&](const std::vector<std::vector<std::string>>& sub_words,
                           const std::vector<std::vector<std::string>>& super_words,
                           const std::vector<int>& cm, const char* kind) {
        for (std::size_t c = 0; c < sub_words.size(); ++c) {
            std::vector<std::string> mapped;
            std::set<std::string> on_curve;
            for (auto& id : sub_words[c]) {
                mapped.push_back(g.point_map.at(id));
                on_curve.insert(g.point_map.at(id));
            }
            std::vector<std::string> filtered;
            for (auto& id : super_words[std::size_t(cm[c])])
                if (on_curve.count(id)) filtered.push_back(id);
            if (!cyclic_equal(mapped, filtered))
                bad(std::string(kind) + " curve " + std::to_string(c) +
                    ": cyclic order not preserved");
        }
    };
    check_words(g.sub.alpha, g.super.alpha, g.alpha_map, "alpha");
    check_words(g.sub.beta, g.super.beta, g.beta_map, "beta");

    /* xprime: one point per complementary alpha, hitting every
       complementary beta exactly once */
    std::set<int> comp_alpha, comp_beta;
    for (std::size_t i = 0; i < g.super.alpha.size(); ++i) comp_alpha.insert(int(i));
    for (std::size_t i = 0; i < g.super.beta.size(); ++i) comp_beta.insert(int(i));
    for (int v : g.alpha_map) comp_alpha.erase(v);
    for (int v : g.beta_map) comp_beta.erase(v);
    if (g.xprime.size() != comp_alpha.size())
        bad("xprime lists " + std::to_string(g.xprime.size()) + " points for " +
            std::to_string(comp_alpha.size()) + " complementary alpha curves");
    std::set<int> seen_alpha, seen_beta;
    for (auto& id : g.xprime) {
        if (!g.super.point_index.count(id)) {
            bad("xprime names missing super point \"" + id + "\"");
            continue;
        }
        const auto& p = g.super.point(id);
        if (!comp_alpha.count(p.alpha) || !seen_alpha.insert(p.alpha).second)
            bad("xprime point \"" + id + "\" does not sit on a fresh complementary alpha curve");
        if (!comp_beta.count(p.beta) || !seen_beta.insert(p.beta).second)
            bad("xprime point \"" + id + "\" does not sit on a fresh complementary beta curve");
    }
    return out;
}

Generator induced_map(const GluingData& g, const Generator& sub_gen) {
    Generator out;
    out.pt.assign(g.super.alpha.size(), -1);
    for (std::size_t a = 0; a < sub_gen.pt.size(); ++a) {
        const auto& id = g.sub.points[std::size_t(sub_gen.pt[a])].id;
        out.pt[std::size_t(g.alpha_map[a])] = g.super.point_index.at(g.point_map.at(id));
    }
    for (auto& id : g.xprime) {
        const auto& p = g.super.point(id);
        if (out.pt[std::size_t(p.alpha)] != -1)
            throw std::runtime_error("xprime incompatible: alpha curve " +
                                     std::to_string(p.alpha) + " already used");
        out.pt[std::size_t(p.alpha)] = g.super.point_index.at(id);
    }
    std::set<int> betas;
    for (int pi : out.pt) {
        if (pi < 0) throw std::runtime_error("induced generator misses an alpha curve");
        if (!betas.insert(g.super.points[std::size_t(pi)].beta).second)
            throw std::runtime_error("xprime incompatible: beta curve used twice");
    }
    return out;
}

ChainMapReport verify_filtered_chain_map(const GluingData& g) {
    {
        auto emb = verify_embedding(g);
        if (!emb.empty())
            throw std::runtime_error("embedding invalid: " + emb.front());
    }

    auto sub_gens = enumerate_generators(g.sub);
    auto super_gens = enumerate_generators(g.super);
    std::map<Generator, std::size_t> super_index;
    for (std::size_t i = 0; i < super_gens.size(); ++i) super_index[super_gens[i]] = i;

    std::map<Generator, std::size_t> image_of; /* super gen -> sub gen index */
    for (std::size_t i = 0; i < sub_gens.size(); ++i)
        image_of[induced_map(g, sub_gens[i])] = i;

    auto sub_disks = enumerate_disks(g.sub);
    auto super_disks = enumerate_disks(g.super);

    std::map<std::pair<Generator, Generator>, std::vector<const CountedDisk*>> sub_by_pair;
    for (auto& disk : sub_disks)
        sub_by_pair[{disk.from, disk.to}].push_back(&disk);

    ChainMapReport rep;
    rep.disks_match = true;
    rep.jplus_match = true;

    for (auto& disk : super_disks) {
        auto fit = image_of.find(disk.from);
        auto tit = image_of.find(disk.to);
        if (fit == image_of.end() || tit == image_of.end()) continue;
        const Generator& u = sub_gens[fit->second];
        const Generator& v = sub_gens[tit->second];
        std::string pair_desc = "super disk " + generator_name(g.super, disk.from) +
                                " -> " + generator_name(g.super, disk.to);
        auto sit = sub_by_pair.find({u, v});
        const CountedDisk* matched = nullptr;
        if (sit != sub_by_pair.end()) {
            for (auto* sd : sit->second) {
                Domain pushed;
                for (auto& [id, c] : sd->domain.coeff)
                    pushed.coeff[g.region_map.at(id)] = c;
                if (pushed == disk.domain) { matched = sd; break; }
            }
        }
        if (!matched) {
            rep.disks_match = false;
            rep.violations.push_back(pair_desc + " has no matching sub disk with equal domain");
            continue;
        }
        if (matched->j_plus != disk.j_plus) {
            rep.jplus_match = false;
            rep.violations.push_back(pair_desc + ": J+ " + std::to_string(disk.j_plus) +
                                     " in super vs " + std::to_string(matched->j_plus) +
                                     " in sub");
        }
    }

    /* Phi d_r = d_r Phi as matrices */
    SplitDifferential sd_sub = split_differential(g.sub);
    SplitDifferential sd_super = split_differential(g.super);
    BitMat phi(super_gens.size(), sub_gens.size());
    for (std::size_t i = 0; i < sub_gens.size(); ++i)
        phi.set(super_index.at(induced_map(g, sub_gens[i])), i, true);

    rep.commutes = true;
    std::size_t rmax = std::max(sd_sub.i_max, sd_super.i_max);
    for (std::size_t r = 0; r <= rmax; ++r) {
        BitMat lhs = (r < sd_super.dr.size() ? sd_super.dr[r] : BitMat(super_gens.size(), super_gens.size())) * phi;
        BitMat rhs = phi * (r < sd_sub.dr.size() ? sd_sub.dr[r] : BitMat(sub_gens.size(), sub_gens.size()));
        if (!(lhs == rhs)) {
            rep.commutes = false;
            rep.violations.push_back("Phi does not commute with d_" + std::to_string(r));
        }
    }
    return rep;
}

ATInequalityReport at_inequality_check(const GluingData& g, std::size_t cap, bool exact) {
    FilteredComplex fc_sub = from_diagram(g.sub);
    FilteredComplex fc_super = from_diagram(g.super);
    if (!fc_sub.eh || !fc_super.eh)
        throw std::runtime_error("both diagrams need an eh mark for the inequality check");

    Generator eh_sub = eh_generator(g.sub);
    Generator eh_image = induced_map(g, eh_sub);
    if (generator_name(g.super, eh_image) != *fc_super.eh)
        throw std::runtime_error("Phi(eh_sub) is " + generator_name(g.super, eh_image) +
                                 ", not the super eh " + *fc_super.eh);

    ATInequalityReport rep;
    rep.sub_at = algebraic_torsion(fc_sub, cap, exact);
    rep.super_at = algebraic_torsion(fc_super, cap, exact);

    auto fmt = [](const ATReport& r) {
        if (r.kind == ATReport::finite) return std::to_string(r.value);
        if (r.kind == ATReport::infinite) return std::string("infinity");
        return ">= " + std::to_string(r.cap + 1) + " (undetermined)";
    };

    if (rep.sub_at.kind == ATReport::undetermined ||
        rep.super_at.kind == ATReport::undetermined) {
        rep.verdict = ATInequalityReport::inconclusive;
        rep.detail = "sub " + fmt(rep.sub_at) + ", super " + fmt(rep.super_at) +
                     ": inequality undecidable at this cap";
    } else if (rep.sub_at.kind == ATReport::infinite) {
        rep.verdict = ATInequalityReport::holds;
        rep.detail = "sub infinity >= super " + fmt(rep.super_at);
    } else if (rep.super_at.kind == ATReport::infinite) {
        rep.verdict = ATInequalityReport::violated;
        rep.detail = "sub " + fmt(rep.sub_at) + " < super infinity";
    } else if (rep.sub_at.value >= rep.super_at.value) {
        rep.verdict = ATInequalityReport::holds;
        rep.detail = "sub " + fmt(rep.sub_at) + " >= super " + fmt(rep.super_at);
    } else {
        rep.verdict = ATInequalityReport::violated;
        rep.detail = "sub " + fmt(rep.sub_at) + " < super " + fmt(rep.super_at);
    }

    /* transport the sub witness and re-verify it upstairs */
    if (rep.sub_at.kind == ATReport::finite && rep.sub_at.witness) {
        auto sub_gens = enumerate_generators(g.sub);
        auto super_gens = enumerate_generators(g.super);
        std::map<Generator, std::size_t> super_index;
        for (std::size_t i = 0; i < super_gens.size(); ++i) super_index[super_gens[i]] = i;

        Element transported;
        transported.level.assign(rep.sub_at.witness->c.size(), BitVec(fc_super.size()));
        for (std::size_t m = 0; m < rep.sub_at.witness->c.size(); ++m)
            for (std::size_t i = 0; i < sub_gens.size(); ++i)
                if (rep.sub_at.witness->c[m].get(i))
                    transported.level[m].flip(super_index.at(induced_map(g, sub_gens[i])));

        Element im = apply_total(fc_super, transported);
        BitVec want = fc_super.unit(*fc_super.eh);
        bool good = !im.level.empty() && im.level[0] == want;
        for (std::size_t j = 1; j < im.level.size(); ++j)
            if (im.level[j].any()) good = false;
        rep.witness_transported = good;
    }
    return rep;
}

} // namespace atc
