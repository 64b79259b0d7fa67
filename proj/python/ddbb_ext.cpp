#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ddbb/run.hpp"

namespace py = pybind11;

namespace {

ddbb::SolverConfig make_config(std::optional<std::size_t> width, bool rub, bool locb, double timeout,
                               std::size_t threads) {
  ddbb::SolverConfig c;
  c.width = width;
  c.rub = rub;
  c.locb = locb;
  c.timeout_seconds = timeout;
  c.workers = threads;
  return c;
}

py::dict report_dict(const ddbb::RunReport& r) {
  py::dict d;
  d["problem"] = std::string(ddbb::problem_name(r.problem));
  d["status"] = std::string(ddbb::status_name(r.status));
  d["objective"] = r.objective ? py::object(py::int_(*r.objective)) : py::object(py::none());
  d["bound"] = r.bound ? py::object(py::int_(*r.bound)) : py::object(py::none());
  d["gap"] = r.gap;
  d["explored"] = r.explored;
  d["seconds"] = r.seconds;
  d["solution"] = r.solution;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ddbb, m) {
  m.doc() = "Decision-diagram branch and bound";

  py::register_exception<ddbb::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "solve",
      [](const std::string& problem, const std::string& text, std::optional<std::size_t> width, bool rub, bool locb,
         double timeout, std::size_t threads) {
        const auto kind = ddbb::parse_problem_kind(problem);
        const auto config = make_config(width, rub, locb, timeout, threads);
        ddbb::RunReport r;
        {
          py::gil_scoped_release release;
          r = ddbb::solve_instance(kind, text, config);
        }
        return report_dict(r);
      },
      py::arg("problem"), py::arg("text"), py::arg("width") = py::none(), py::arg("rub") = true,
      py::arg("locb") = true, py::arg("timeout") = 1800.0, py::arg("threads") = 1,
      "Solve an instance given as text in its file format. Returns a dict.");

  m.def(
      "generate",
      [](const std::string& problem, std::size_t n, double p, std::uint64_t seed) {
        return ddbb::generate_instance(ddbb::parse_problem_kind(problem), n, p, seed);
      },
      py::arg("problem"), py::arg("n"), py::arg("p"), py::arg("seed") = 0, "Seeded random instance text.");

  m.def("end_gap", &ddbb::end_gap, py::arg("lb"), py::arg("ub"), "100 * (|ub| - |lb|) / |ub|, in percent.");

  m.def(
      "relaxed_dot",
      [](const std::string& problem, const std::string& text, std::optional<std::size_t> width) {
        return ddbb::root_relaxed_dot(ddbb::parse_problem_kind(problem), text, width);
      },
      py::arg("problem"), py::arg("text"), py::arg("width") = py::none(), "Graphviz text of the root relaxed diagram.");

  m.def(
      "parse_graph",
      [](const std::string& text) {
        const auto g = ddbb::parse_graph(text);
        std::vector<std::tuple<std::size_t, std::size_t, ddbb::Value>> edges;
        for (const auto& e : g.edges) edges.emplace_back(e.u, e.v, e.weight);
        return py::make_tuple(g.n, g.vertex_weights, edges);
      },
      py::arg("text"), "(n, vertex_weights, [(u, v, w)]) with 0-indexed vertices.");

  m.def(
      "parse_wcnf",
      [](const std::string& text) {
        const auto f = ddbb::parse_wcnf(text);
        std::vector<std::tuple<ddbb::Value, int, int>> clauses;
        for (const auto& c : f.clauses) clauses.emplace_back(c.weight, c.first, c.second);
        return py::make_tuple(f.variables, clauses);
      },
      py::arg("text"), "(variables, [(w, lit1, lit2)]), lit2 = 0 for unit clauses.");

  m.def(
      "parse_tsptw",
      [](const std::string& text) {
        const auto t = ddbb::parse_tsptw(text);
        std::vector<std::vector<ddbb::Value>> rows(t.n);
        for (std::size_t i = 0; i < t.n; ++i) rows[i].assign(t.dist.begin() + i * t.n, t.dist.begin() + (i + 1) * t.n);
        return py::make_tuple(rows, t.earliest, t.latest);
      },
      py::arg("text"), "(distance rows, earliest, latest).");
}
