#include "atcalc/complex.hpp"

#include <set>
#include <stdexcept>

namespace atc {

BitVec FilteredComplex::unit(const std::string& name) const {
    auto it = index.find(name);
    if (it == index.end()) throw std::out_of_range("unknown generator: " + name);
    BitVec v(names.size());
    v.set(std::size_t(it->second), true);
    return v;
}

FilteredComplex from_diagram(const HeegaardDiagram& d) {
    SplitDifferential sd = split_differential(d);

    FilteredComplex fc;
    for (auto& g : sd.gens) {
        fc.names.push_back(generator_name(d, g));
        fc.cycles.push_back(cycle_count(d, g));
    }
    for (std::size_t i = 0; i < fc.names.size(); ++i)
        fc.index[fc.names[i]] = int(i);
    fc.dr = sd.dr;

    /* convolution identities: sum_{i+j=n} d_i d_j = 0 */
    for (std::size_t n = 0; n <= 2 * sd.i_max; ++n) {
        BitMat acc(fc.size(), fc.size());
        for (std::size_t i = 0; i <= n && i <= sd.i_max; ++i) {
            std::size_t j = n - i;
            if (j > sd.i_max) continue;
            BitMat prod = fc.dr[i] * fc.dr[j];
            for (std::size_t r = 0; r < acc.rows; ++r) acc.row[r] ^= prod.row[r];
        }
        if (!acc.is_zero())
            throw std::runtime_error(
                "differential does not square to zero: convolution fails at level " +
                std::to_string(n));
    }

    if (d.eh) {
        Generator g = eh_generator(d);
        fc.eh = generator_name(d, g);
        BitVec e = fc.unit(*fc.eh);
        for (std::size_t r = 0; r < fc.dr.size(); ++r)
            if (fc.dr[r].apply(e).any())
                throw std::runtime_error("eh generator is not a cycle under d_" +
                                         std::to_string(r));
    }

    fc.verified = true;
    return fc;
}

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::runtime_error("unknown field \"" + it.key() + "\" in " + where);
}

} // namespace

FilteredComplex from_fixture(const nlohmann::json& j,
                             std::vector<std::string>* warnings) {
    if (!j.is_object()) throw std::runtime_error("fixture file must be a JSON object");
    require_keys(j, {"generators", "eh", "disks"}, "fixture");
    for (const char* k : {"generators", "eh", "disks"})
        if (!j.contains(k))
            throw std::runtime_error(std::string("fixture missing field \"") + k + "\"");

    FilteredComplex fc;
    if (!j["generators"].is_array()) throw std::runtime_error("\"generators\" must be an array");
    for (auto& gj : j["generators"]) {
        if (!gj.is_object()) throw std::runtime_error("generator entries must be objects");
        require_keys(gj, {"name", "cycles"}, "generator");
        if (!gj.contains("name") || !gj["name"].is_string() ||
            !gj.contains("cycles") || !gj["cycles"].is_number_integer())
            throw std::runtime_error("generator entries need \"name\" and integer \"cycles\"");
        std::string name = gj["name"].get<std::string>();
        if (fc.index.count(name)) throw std::runtime_error("duplicate generator \"" + name + "\"");
        fc.index[name] = int(fc.names.size());
        fc.names.push_back(name);
        fc.cycles.push_back(gj["cycles"].get<int>());
    }

    if (!j["eh"].is_string()) throw std::runtime_error("\"eh\" must be a generator name");
    fc.eh = j["eh"].get<std::string>();
    if (!fc.index.count(*fc.eh))
        throw std::runtime_error("eh names unknown generator \"" + *fc.eh + "\"");

    if (!j["disks"].is_array()) throw std::runtime_error("\"disks\" must be an array");
    std::size_t imax = 0;
    std::vector<std::tuple<int, int, std::size_t>> entries;
    for (auto& dj : j["disks"]) {
        if (!dj.is_object()) throw std::runtime_error("disk entries must be objects");
        require_keys(dj, {"from", "to", "jplus"}, "disk");
        for (const char* k : {"from", "to", "jplus"})
            if (!dj.contains(k))
                throw std::runtime_error(std::string("disk entry missing \"") + k + "\"");
        if (!dj["from"].is_string() || !dj["to"].is_string() ||
            !dj["jplus"].is_number_integer())
            throw std::runtime_error("disk entries need string \"from\"/\"to\" and integer \"jplus\"");
        std::string from = dj["from"].get<std::string>();
        std::string to = dj["to"].get<std::string>();
        long long jp = dj["jplus"].get<long long>();
        if (!fc.index.count(from)) throw std::runtime_error("disk from unknown generator \"" + from + "\"");
        if (!fc.index.count(to)) throw std::runtime_error("disk to unknown generator \"" + to + "\"");
        if (jp < 0 || jp % 2 != 0)
            throw std::runtime_error("disk jplus must be an even natural, got " + std::to_string(jp));
        std::size_t r = std::size_t(jp / 2);
        imax = std::max(imax, r);
        entries.push_back({fc.index.at(from), fc.index.at(to), r});
    }

    fc.dr.assign(imax + 1, BitMat(fc.size(), fc.size()));
    std::set<std::tuple<int, int, std::size_t>> seen;
    for (auto& [from, to, r] : entries) {
        if (!seen.insert({from, to, r}).second && warnings)
            warnings->push_back("duplicate disk " + fc.names[std::size_t(from)] + " -> " +
                                fc.names[std::size_t(to)] + " (J+ " + std::to_string(2 * r) +
                                ") cancels mod 2");
        fc.dr[r].flip(std::size_t(to), std::size_t(from));
    }

    fc.verified = false;
    return fc;
}

Element apply_total(const FilteredComplex& fc, const Element& e) {
    Element out;
    out.level.assign(e.level.size(), BitVec(fc.size()));
    for (std::size_t j = 0; j < e.level.size(); ++j)
        for (std::size_t i = 0; i < fc.dr.size(); ++i) {
            if (i + j >= e.level.size()) break;
            out.level[j] ^= fc.dr[i].apply(e.level[i + j]);
        }
    return out;
}

} // namespace atc
