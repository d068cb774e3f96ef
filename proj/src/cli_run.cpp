#include "atcalc/cli_run.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "atcalc/complex.hpp"
#include "atcalc/diagram.hpp"
#include "atcalc/disks.hpp"
#include "atcalc/domains.hpp"
#include "atcalc/gluing.hpp"
#include "atcalc/openbook.hpp"
#include "atcalc/torsion.hpp"

namespace atc {

namespace {

using ojson = nlohmann::ordered_json;

struct validation_failure {
    std::vector<std::string> violations;
};

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
    return nlohmann::json::parse(in); /* throws with byte position on bad syntax */
}

enum class InputKind { diagram, fixture, openbook };

const char* kind_name(InputKind k) {
    switch (k) {
    case InputKind::diagram: return "diagram";
    case InputKind::fixture: return "fixture";
    default: return "open book";
    }
}

struct Input {
    InputKind kind = InputKind::diagram;
    nlohmann::json raw;
    std::optional<HeegaardDiagram> diagram; /* parsed or assembled */
};

Input load_input(const std::string& path) {
    Input in;
    in.raw = load_json(path);
    if (!in.raw.is_object())
        throw std::runtime_error("\"" + path + "\": expected a JSON object");
    if (in.raw.contains("generators")) {
        in.kind = InputKind::fixture;
    } else if (in.raw.contains("points")) {
        in.kind = InputKind::diagram;
        in.diagram = parse_diagram(in.raw);
    } else if (in.raw.contains("vertices")) {
        in.kind = InputKind::openbook;
        in.diagram = assemble_from_partial_open_book(parse_pob(in.raw));
    } else {
        throw std::runtime_error("\"" + path +
                                 "\": expected a diagram (\"points\"), a complex fixture "
                                 "(\"generators\"), or a partial open book (\"vertices\")");
    }
    return in;
}

void require_valid(const HeegaardDiagram& d) {
    auto rep = validate_diagram(d);
    if (!rep.ok()) throw validation_failure{rep.violations};
}

/* complex for the at/pages commands, with fixture warnings collected */
FilteredComplex build_complex(const Input& in, std::vector<std::string>& warnings) {
    if (in.diagram) {
        require_valid(*in.diagram);
        return from_diagram(*in.diagram);
    }
    warnings.push_back("unverified complex: differentials taken as listed, not checked");
    return from_fixture(in.raw, &warnings);
}

std::string fmt_at(const ATReport& r) {
    switch (r.kind) {
    case ATReport::finite: return std::to_string(r.value);
    case ATReport::infinite: return "infinity";
    default: return ">= " + std::to_string(r.cap + 1) + " (undetermined)";
    }
}

std::string chain_names(const FilteredComplex& fc, const BitVec& v) {
    std::string s;
    for (std::size_t i = 0; i < fc.size(); ++i) {
        if (!v.get(i)) continue;
        if (!s.empty()) s += " + ";
        s += fc.names[i];
    }
    return s.empty() ? "0" : s;
}

std::vector<std::string> chain_list(const FilteredComplex& fc, const BitVec& v) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < fc.size(); ++i)
        if (v.get(i)) out.push_back(fc.names[i]);
    return out;
}

std::string pad(const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
}

std::string num(long long v, std::size_t w) {
    std::string s = std::to_string(v);
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
}

struct DiskRow {
    std::string shape, name;
    long long two_n = 0, diff = 0, jp = 0;
};

/* "(i,j,...)" tuple shorthand -> components, if the name has that form */
std::optional<std::vector<std::string>> tuple_parts(const std::string& name) {
    if (name.size() < 2 || name.front() != '(' || name.back() != ')') return std::nullopt;
    std::vector<std::string> parts;
    std::string cur;
    for (std::size_t i = 1; i + 1 < name.size(); ++i) {
        if (name[i] == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += name[i];
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<DiskRow> diagram_disk_rows(const HeegaardDiagram& d) {
    std::vector<DiskRow> rows;
    for (const auto& disk : enumerate_disks(d)) {
        DiskRow r;
        r.shape = disk.shape == DiskShape::bigon ? "bigon" : "rectangle";
        std::vector<std::string> corners;
        for (std::size_t a = 0; a < disk.from.pt.size(); ++a) {
            if (disk.from.pt[a] == disk.to.pt[a]) continue;
            corners.push_back(d.points[std::size_t(disk.from.pt[a])].id);
            corners.push_back(d.points[std::size_t(disk.to.pt[a])].id);
        }
        std::sort(corners.begin(), corners.end());
        for (auto& c : corners) r.name += c;
        Rational two_n = (generator_measure(d, disk.domain, disk.from) +
                          generator_measure(d, disk.domain, disk.to)) *
                         Rational(2);
        if (!two_n.is_integer()) throw std::logic_error("2(nx+ny) not an integer");
        r.two_n = two_n.num;
        r.diff = cycle_count(d, disk.from) - cycle_count(d, disk.to);
        r.jp = disk.j_plus;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<DiskRow> fixture_disk_rows(const nlohmann::json& raw, const FilteredComplex& fc) {
    std::vector<DiskRow> rows;
    if (!raw.contains("disks")) return rows;
    for (const auto& dj : raw["disks"]) {
        DiskRow r;
        std::string from = dj["from"].get<std::string>(), to = dj["to"].get<std::string>();
        r.name = from + "->" + to;
        r.jp = dj["jplus"].get<long long>();
        r.diff = fc.cycles[std::size_t(fc.index.at(from))] -
                 fc.cycles[std::size_t(fc.index.at(to))];
        r.two_n = r.jp + 1 - r.diff;
        auto tf = tuple_parts(from), tt = tuple_parts(to);
        r.shape = "?";
        if (tf && tt && tf->size() == tt->size()) {
            std::size_t h = 0;
            for (std::size_t i = 0; i < tf->size(); ++i)
                if ((*tf)[i] != (*tt)[i]) ++h;
            if (h == 1) r.shape = "bigon";
            else if (h == 2) r.shape = "rectangle";
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

void text_disk_table(std::ostream& out, const std::vector<DiskRow>& rows) {
    std::size_t ws = 5, wn = 4;
    for (const auto& r : rows) {
        ws = std::max(ws, r.shape.size());
        wn = std::max(wn, r.name.size());
    }
    out << pad("shape", ws) << "  " << pad("name", wn) << "  2(nx+ny)  |x|-|y|  J+\n";
    for (const auto& r : rows)
        out << pad(r.shape, ws) << "  " << pad(r.name, wn) << "  " << num(r.two_n, 8) << "  "
            << num(r.diff, 7) << "  " << r.jp << "\n";
}

void text_warnings(std::ostream& out, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) out << "warning: " << w << "\n";
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    Input in = load_input(cfg.inputs[0]);
    ojson j;
    j["command"] = "validate";
    j["input"] = cfg.inputs[0];
    j["kind"] = kind_name(in.kind);
    std::vector<std::string> warnings, violations, nice;
    bool admissible = false;
    if (in.diagram) {
        auto rep = validate_diagram(*in.diagram);
        violations = rep.violations;
        if (rep.ok()) {
            nice = check_nice(*in.diagram);
            admissible = check_admissible(*in.diagram);
        }
    } else {
        warnings.push_back("unverified complex: differentials taken as listed, not checked");
        from_fixture(in.raw, &warnings);
    }
    bool valid = violations.empty();
    j["valid"] = valid;
    j["violations"] = violations;
    if (in.diagram && valid) {
        j["nice"] = nice;
        j["admissible"] = admissible;
    }
    if (!warnings.empty()) j["warnings"] = warnings;
    if (cfg.output == "json") {
        out << j.dump(2) << "\n";
    } else {
        out << "input: " << cfg.inputs[0] << " (" << kind_name(in.kind) << ")\n";
        text_warnings(out, warnings);
        out << "valid: " << (valid ? "yes" : "no") << "\n";
        for (const auto& v : violations) out << "violation: " << v << "\n";
        if (in.diagram && valid) {
            out << "nice: " << (nice.empty() ? "yes" : "no") << "\n";
            for (const auto& v : nice) out << "not nice: " << v << "\n";
            out << "admissible: " << (admissible ? "yes" : "no") << "\n";
        }
    }
    return valid ? 0 : 1;
}

int cmd_generators(const RunConfig& cfg, std::ostream& out) {
    Input in = load_input(cfg.inputs[0]);
    std::vector<std::string> warnings;
    std::vector<std::pair<std::string, int>> gens;
    if (in.diagram) {
        require_valid(*in.diagram);
        for (const auto& g : enumerate_generators(*in.diagram))
            gens.push_back({generator_name(*in.diagram, g), cycle_count(*in.diagram, g)});
    } else {
        warnings.push_back("unverified complex: differentials taken as listed, not checked");
        FilteredComplex fc = from_fixture(in.raw, &warnings);
        for (std::size_t i = 0; i < fc.size(); ++i)
            gens.push_back({fc.names[i], fc.cycles[i]});
    }
    if (cfg.output == "json") {
        ojson j;
        j["command"] = "generators";
        j["input"] = cfg.inputs[0];
        if (!warnings.empty()) j["warnings"] = warnings;
        j["count"] = gens.size();
        j["generators"] = ojson::array();
        for (const auto& [name, cyc] : gens)
            j["generators"].push_back(ojson{{"name", name}, {"cycles", cyc}});
        out << j.dump(2) << "\n";
    } else {
        text_warnings(out, warnings);
        out << "generators: " << gens.size() << "\n";
        for (const auto& [name, cyc] : gens) out << name << "  cycles " << cyc << "\n";
    }
    return 0;
}

int cmd_disks(const RunConfig& cfg, std::ostream& out) {
    Input in = load_input(cfg.inputs[0]);
    std::vector<std::string> warnings;
    std::vector<DiskRow> rows;
    if (in.diagram) {
        require_valid(*in.diagram);
        rows = diagram_disk_rows(*in.diagram);
    } else {
        warnings.push_back("unverified complex: differentials taken as listed, not checked");
        FilteredComplex fc = from_fixture(in.raw, &warnings);
        rows = fixture_disk_rows(in.raw, fc);
    }
    if (cfg.output == "json") {
        ojson j;
        j["command"] = "disks";
        j["input"] = cfg.inputs[0];
        if (!warnings.empty()) j["warnings"] = warnings;
        j["count"] = rows.size();
        j["disks"] = ojson::array();
        for (const auto& r : rows)
            j["disks"].push_back(ojson{{"shape", r.shape},
                                       {"name", r.name},
                                       {"two_nxny", r.two_n},
                                       {"cycle_diff", r.diff},
                                       {"j_plus", r.jp}});
        out << j.dump(2) << "\n";
    } else {
        text_warnings(out, warnings);
        out << "disks: " << rows.size() << "\n";
        text_disk_table(out, rows);
    }
    return 0;
}

int cmd_at(const RunConfig& cfg, std::ostream& out) {
    Input in = load_input(cfg.inputs[0]);
    std::vector<std::string> warnings;
    FilteredComplex fc = build_complex(in, warnings);
    ATReport rep = algebraic_torsion(fc, std::size_t(cfg.cap), cfg.exact);
    if (cfg.output == "json") {
        ojson j;
        j["command"] = "at";
        j["input"] = cfg.inputs[0];
        if (!warnings.empty()) j["warnings"] = warnings;
        if (fc.eh) j["eh"] = *fc.eh;
        j["cap"] = rep.cap;
        j["exact"] = cfg.exact;
        switch (rep.kind) {
        case ATReport::finite: j["kind"] = "finite"; j["value"] = rep.value; break;
        case ATReport::infinite: j["kind"] = "infinite"; break;
        default: j["kind"] = "undetermined"; j["bound"] = ">= " + std::to_string(rep.cap + 1); break;
        }
        if (rep.witness) {
            j["witness"] = ojson::array();
            for (const auto& c : rep.witness->c) j["witness"].push_back(chain_list(fc, c));
        }
        out << j.dump(2) << "\n";
    } else {
        text_warnings(out, warnings);
        if (fc.eh) out << "eh = " << *fc.eh << "\n";
        out << "AT = " << fmt_at(rep);
        if (rep.kind == ATReport::undetermined) out << " at cap " << rep.cap;
        out << "\n";
        if (rep.witness)
            for (std::size_t i = 0; i < rep.witness->c.size(); ++i)
                out << "  c" << i << " = " << chain_names(fc, rep.witness->c[i]) << "\n";
    }
    return rep.kind == ATReport::undetermined ? 2 : 0;
}

int cmd_pages(const RunConfig& cfg, std::ostream& out) {
    Input in = load_input(cfg.inputs[0]);
    std::vector<std::string> warnings;
    FilteredComplex fc = build_complex(in, warnings);
    std::vector<std::vector<std::size_t>> dims;
    for (int r = 0; r <= cfg.r_max; ++r) {
        std::vector<std::size_t> row;
        for (int p = 0; p <= cfg.p_max; ++p)
            row.push_back(page_dimension(fc, std::size_t(r), std::size_t(p)));
        dims.push_back(std::move(row));
    }
    if (cfg.output == "json") {
        ojson j;
        j["command"] = "pages";
        j["input"] = cfg.inputs[0];
        if (!warnings.empty()) j["warnings"] = warnings;
        j["r_max"] = cfg.r_max;
        j["p_max"] = cfg.p_max;
        j["dims"] = dims;
        out << j.dump(2) << "\n";
    } else {
        text_warnings(out, warnings);
        out << "dim E^r_p" << "\n" << pad("r\\p", 5);
        for (int p = 0; p <= cfg.p_max; ++p) out << num(p, 6);
        out << "\n";
        for (int r = 0; r <= cfg.r_max; ++r) {
            out << pad(std::to_string(r), 5);
            for (std::size_t v : dims[std::size_t(r)]) out << num((long long)v, 6);
            out << "\n";
        }
    }
    return 0;
}

int cmd_glue(const RunConfig& cfg, std::ostream& out) {
    Input sub = load_input(cfg.inputs[0]);
    Input super = load_input(cfg.inputs[1]);
    if (!sub.diagram || !super.diagram || sub.kind != InputKind::diagram ||
        super.kind != InputKind::diagram)
        throw std::runtime_error("glue expects two diagram files and a map file");
    nlohmann::json mapj = load_json(cfg.inputs[2]);
    GluingData g = parse_gluing(sub.raw, super.raw, mapj);
    std::vector<std::string> emb = verify_embedding(g);
    if (!emb.empty()) throw validation_failure{emb};
    ChainMapReport cm = verify_filtered_chain_map(g);
    ATInequalityReport ineq;
    if (cm.ok()) ineq = at_inequality_check(g, std::size_t(cfg.cap), cfg.exact);
    const char* verdict = ineq.verdict == ATInequalityReport::holds        ? "holds"
                          : ineq.verdict == ATInequalityReport::violated   ? "violated"
                                                                           : "inconclusive";
    if (cfg.output == "json") {
        ojson j;
        j["command"] = "glue";
        j["sub"] = cfg.inputs[0];
        j["super"] = cfg.inputs[1];
        j["map"] = cfg.inputs[2];
        j["embedding"] = "ok";
        j["disks_match"] = cm.disks_match;
        j["jplus_match"] = cm.jplus_match;
        j["commutes"] = cm.commutes;
        j["chain_map_violations"] = cm.violations;
        if (cm.ok()) {
            j["sub_at"] = fmt_at(ineq.sub_at);
            j["super_at"] = fmt_at(ineq.super_at);
            j["verdict"] = verdict;
            j["witness_transported"] = ineq.witness_transported;
            if (!ineq.detail.empty()) j["detail"] = ineq.detail;
        }
        out << j.dump(2) << "\n";
    } else {
        out << "embedding: ok\n";
        out << "disks match: " << (cm.disks_match ? "yes" : "no") << "\n";
        out << "J+ match: " << (cm.jplus_match ? "yes" : "no") << "\n";
        out << "chain map commutes: " << (cm.commutes ? "yes" : "no") << "\n";
        for (const auto& v : cm.violations) out << "violation: " << v << "\n";
        if (cm.ok()) {
            out << "AT(sub) = " << fmt_at(ineq.sub_at) << "\n";
            out << "AT(super) = " << fmt_at(ineq.super_at) << "\n";
            out << "inequality AT(sub) >= AT(super): " << verdict << "\n";
            if (!ineq.detail.empty()) out << "detail: " << ineq.detail << "\n";
            if (ineq.sub_at.kind == ATReport::finite)
                out << "witness transported: " << (ineq.witness_transported ? "yes" : "no") << "\n";
        }
    }
    if (!cm.ok()) return 1;
    if (ineq.verdict == ATInequalityReport::violated) return 1;
    return ineq.verdict == ATInequalityReport::inconclusive ? 2 : 0;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out) {
    try {
        std::size_t need = cfg.command == "glue" ? 3 : 1;
        if (cfg.inputs.size() != need)
            throw std::runtime_error(cfg.command + " takes " + std::to_string(need) +
                                     " input file" + (need > 1 ? "s" : ""));
        if (cfg.cap < 0) throw std::runtime_error("cap must be >= 0");
        if (cfg.output != "text" && cfg.output != "json")
            throw std::runtime_error("output must be \"text\" or \"json\"");
        if (cfg.command == "validate") return cmd_validate(cfg, out);
        if (cfg.command == "generators") return cmd_generators(cfg, out);
        if (cfg.command == "disks") return cmd_disks(cfg, out);
        if (cfg.command == "at") return cmd_at(cfg, out);
        if (cfg.command == "pages") return cmd_pages(cfg, out);
        if (cfg.command == "glue") return cmd_glue(cfg, out);
        throw std::runtime_error("unknown command \"" + cfg.command + "\"");
    } catch (const validation_failure& vf) {
        if (cfg.output == "json") {
            ojson j;
            j["command"] = cfg.command;
            j["valid"] = false;
            j["violations"] = vf.violations;
            out << j.dump(2) << "\n";
        } else {
            out << "invalid input\n";
            for (const auto& v : vf.violations) out << "violation: " << v << "\n";
        }
        return 1;
    } catch (const std::exception& ex) {
        if (cfg.output == "json") {
            ojson j;
            j["command"] = cfg.command;
            j["error"] = ex.what();
            out << j.dump(2) << "\n";
        } else {
            out << "error: " << ex.what() << "\n";
        }
        return 1;
    }
}

} // namespace atc
