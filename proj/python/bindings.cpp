#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tightham/constructions.hpp"
#include "tightham/errors.hpp"
#include "tightham/io.hpp"
#include "tightham/oracle.hpp"
#include "tightham/pipeline.hpp"

namespace py = pybind11;
using namespace tightham;

namespace {

Hypergraph3 make_hypergraph(int n, const std::vector<std::array<Vertex, 3>>& es) {
  std::vector<Triple> ts;
  ts.reserve(es.size());
  for (auto& e : es) ts.push_back(make_triple(e[0], e[1], e[2]));
  return Hypergraph3(n, std::move(ts));
}

std::vector<std::array<Vertex, 3>> edge_list(const Hypergraph3& h) {
  std::vector<std::array<Vertex, 3>> out;
  out.reserve(h.edge_count());
  for (auto& t : h.edges()) out.push_back({t.a, t.b, t.c});
  return out;
}

PipelineConfig config_from(const py::dict& kw) {
  PipelineConfig c;
  for (auto [k, v] : kw) {
    auto key = k.cast<std::string>();
    if (key == "mode") c.mode = v.cast<std::string>() == "faithful" ? LongPathMode::faithful : LongPathMode::desk;
    else if (key == "alpha") c.alpha = v.cast<double>();
    else if (key == "ell") c.ell = v.cast<int>();
    else if (key == "zeta_star") c.zeta_star = v.cast<double>();
    else if (key == "zeta_2star") c.zeta_2star = v.cast<double>();
    else if (key == "theta_star") c.theta_star = v.cast<double>();
    else if (key == "theta_2star") c.theta_2star = v.cast<double>();
    else if (key == "M") c.M = v.cast<int>();
    else if (key == "m") c.m = v.cast<int>();
    else if (key == "attempts") c.attempts = v.cast<int>();
    else if (key == "seed") c.seed = v.cast<std::uint64_t>();
    else throw py::key_error("unknown option " + key);
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  py::class_<Hypergraph3>(m, "Hypergraph3")
      .def(py::init(&make_hypergraph), py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Hypergraph3::n)
      .def("edge_count", &Hypergraph3::edge_count)
      .def("edges", &edge_list)
      .def("has_edge", [](const Hypergraph3& h, Vertex x, Vertex y, Vertex z) { return h.has_edge(x, y, z); })
      .def("pair_degree", &Hypergraph3::pair_degree)
      .def("degree", &Hypergraph3::degree)
      .def("to_h3", &serialize_h3)
      .def_static("from_h3", [](const std::string& s) { return parse_h3(s); })
      .def("__repr__", [](const Hypergraph3& h) {
        return "Hypergraph3(n=" + std::to_string(h.n()) + ", m=" + std::to_string(h.edge_count()) + ")";
      });

  m.def("complete_hypergraph", &complete_hypergraph, py::arg("n"));
  m.def("random_hypergraph", &random_hypergraph, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def(
      "extremal_example", [](const std::string& kind, int n) { return extremal_example(parse_kind(kind), n); },
      py::arg("kind"), py::arg("n"));
  m.def("min_degrees", [](const Hypergraph3& h) {
    auto d = min_degrees(h);
    return py::make_tuple(d.min_degree, d.min_pair_degree);
  });
  m.def("is_tight", [](const Hypergraph3& h, const std::vector<Vertex>& seq, bool cycle) {
    return validate_tight(h, seq, cycle).ok();
  }, py::arg("h"), py::arg("seq"), py::arg("cycle") = false);
  m.def("find_tight_ham_cycle", [](const Hypergraph3& h) -> std::optional<std::vector<Vertex>> {
    auto r = find_tight_ham_cycle(h);
    if (r.status == SearchStatus::budget) throw BudgetError("exact search exceeded its memory budget");
    if (!r.cycle) return std::nullopt;
    return r.cycle->seq();
  });
  m.def("max_matching_size", [](const Hypergraph3& h) { return max_matching_size(h).size; });
  m.def("certify_cycle", [](const Hypergraph3& h, const std::vector<Vertex>& c) { return certify_cycle(h, c).accepted; });
  m.def(
      "_solve_json",
      [](const Hypergraph3& h, const py::dict& kw) {
        auto cfg = config_from(kw);
        HamResult r;
        {
          py::gil_scoped_release release;
          r = run_pipeline(h, cfg);
        }
        return to_json(r, false);
      },
      py::arg("h"), py::arg("options"));
}
