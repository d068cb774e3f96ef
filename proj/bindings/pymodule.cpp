#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "atcalc/cli_run.hpp"
#include "atcalc/complex.hpp"
#include "atcalc/diagram.hpp"
#include "atcalc/disks.hpp"
#include "atcalc/domains.hpp"
#include "atcalc/gluing.hpp"
#include "atcalc/openbook.hpp"
#include "atcalc/torsion.hpp"

namespace py = pybind11;
using namespace atc;

namespace {

HeegaardDiagram diagram_from_text(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.is_object() && j.contains("vertices"))
        return assemble_from_partial_open_book(parse_pob(j));
    return parse_diagram(j);
}

std::vector<std::string> chain_list(const FilteredComplex& fc, const BitVec& v) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < fc.size(); ++i)
        if (v.get(i)) out.push_back(fc.names[i]);
    return out;
}

py::dict at_dict(const FilteredComplex& fc, const ATReport& rep) {
    py::dict d;
    d["cap"] = rep.cap;
    switch (rep.kind) {
    case ATReport::finite:
        d["kind"] = "finite";
        d["value"] = rep.value;
        break;
    case ATReport::infinite: d["kind"] = "infinite"; break;
    default: d["kind"] = "undetermined"; break;
    }
    if (rep.witness) {
        py::list levels;
        for (const auto& c : rep.witness->c) levels.append(chain_list(fc, c));
        d["witness"] = levels;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact calculator for J+ filtered sutured complexes";

    py::class_<HeegaardDiagram>(m, "Diagram")
        .def_static("from_json", &diagram_from_text, py::arg("text"),
                    "parse a diagram, or assemble one from a partial open book")
        .def("validate",
             [](const HeegaardDiagram& d) { return validate_diagram(d).violations; })
        .def("nice", &check_nice)
        .def("admissible", &check_admissible)
        .def("generators",
             [](const HeegaardDiagram& d) {
                 std::vector<std::pair<std::string, int>> out;
                 for (const auto& g : enumerate_generators(d))
                     out.push_back({generator_name(d, g), cycle_count(d, g)});
                 return out;
             },
             "(name, cycle count) pairs")
        .def("disks",
             [](const HeegaardDiagram& d) {
                 py::list out;
                 for (const auto& disk : enumerate_disks(d)) {
                     py::dict row;
                     row["from"] = generator_name(d, disk.from);
                     row["to"] = generator_name(d, disk.to);
                     row["shape"] = disk.shape == DiskShape::bigon ? "bigon" : "rectangle";
                     row["j_plus"] = disk.j_plus;
                     out.append(row);
                 }
                 return out;
             })
        .def_property_readonly("eh",
             [](const HeegaardDiagram& d) -> py::object {
                 if (!d.eh) return py::none();
                 return py::cast(generator_name(d, eh_generator(d)));
             });

    py::class_<FilteredComplex>(m, "Complex")
        .def_static("from_diagram",
                    [](const HeegaardDiagram& d) { return from_diagram(d); })
        .def_static("from_fixture",
                    [](const std::string& text) {
                        std::vector<std::string> warnings;
                        auto fc = from_fixture(nlohmann::json::parse(text), &warnings);
                        return py::make_tuple(fc, warnings);
                    },
                    py::arg("text"), "returns (complex, warnings)")
        .def_property_readonly("names", [](const FilteredComplex& fc) { return fc.names; })
        .def_property_readonly("eh",
             [](const FilteredComplex& fc) -> py::object {
                 if (!fc.eh) return py::none();
                 return py::cast(*fc.eh);
             })
        .def_property_readonly("verified", [](const FilteredComplex& fc) { return fc.verified; })
        .def("__len__", &FilteredComplex::size)
        .def("page_dimension", &page_dimension, py::arg("r"), py::arg("p"))
        .def("at",
             [](const FilteredComplex& fc, std::size_t cap, bool exact) {
                 return at_dict(fc, algebraic_torsion(fc, cap, exact));
             },
             py::arg("cap") = 64, py::arg("exact") = false);

    m.def("glue",
          [](const std::string& sub, const std::string& sup, const std::string& map,
             std::size_t cap, bool exact) {
              GluingData g = parse_gluing(nlohmann::json::parse(sub),
                                          nlohmann::json::parse(sup),
                                          nlohmann::json::parse(map));
              py::dict out;
              auto emb = verify_embedding(g);
              out["embedding_violations"] = emb;
              if (!emb.empty()) return out;
              ChainMapReport cm = verify_filtered_chain_map(g);
              out["chain_map_ok"] = cm.ok();
              out["chain_map_violations"] = cm.violations;
              if (!cm.ok()) return out;
              ATInequalityReport ineq = at_inequality_check(g, cap, exact);
              out["verdict"] = ineq.verdict == ATInequalityReport::holds      ? "holds"
                               : ineq.verdict == ATInequalityReport::violated ? "violated"
                                                                              : "inconclusive";
              out["witness_transported"] = ineq.witness_transported;
              return out;
          },
          py::arg("sub"), py::arg("super"), py::arg("map"), py::arg("cap") = 64,
          py::arg("exact") = false, "run the gluing checks on three JSON texts");

    m.def("run",
          [](const std::string& command, const std::vector<std::string>& inputs,
             long long cap, bool exact, const std::string& output, int r_max, int p_max) {
              RunConfig cfg;
              cfg.command = command;
              cfg.inputs = inputs;
              cfg.cap = cap;
              cfg.exact = exact;
              cfg.output = output;
              cfg.r_max = r_max;
              cfg.p_max = p_max;
              std::ostringstream ss;
              int rc = run(cfg, ss);
              return py::make_tuple(rc, ss.str());
          },
          py::arg("command"), py::arg("inputs"), py::arg("cap") = 64,
          py::arg("exact") = false, py::arg("output") = "text", py::arg("r_max") = 3,
          py::arg("p_max") = 3, "drive the CLI commands; returns (exit_code, report)");
}
