// Python face of the laboratory: scenario loading, the report runner, and a
// couple of pointwise curvature probes. Everything structured crosses the
// boundary as the same JSON the CLI emits, so the two surfaces cannot drift.

#include <array>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riccilab/report.hpp"

namespace py = pybind11;

using riccilab::expr::Evaluator;
using riccilab::scenario::Overrides;
using riccilab::scenario::Scenario;

namespace {

Scenario load_file(const std::string& path, std::optional<double> tolerance,
                   std::optional<std::uint64_t> seed) {
  return riccilab::scenario::load_file(path, Overrides{tolerance, seed});
}

Scenario load_text(const std::string& text, const std::string& name,
                   std::optional<double> tolerance, std::optional<std::uint64_t> seed) {
  return riccilab::scenario::load_text(text, name, Overrides{tolerance, seed});
}

riccilab::report::Report run_report(const Scenario& s, const std::string& command) {
  return riccilab::report::run(s, riccilab::report::parse_command(command));
}

std::array<std::array<double, 4>, 4> ricci_at(const Scenario& s,
                                              const std::array<double, 4>& p) {
  Evaluator ev(p);
  const auto t = s.geo.ricci().evaluate(ev);
  std::array<std::array<double, 4>, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = t.at({i, j});
  return out;
}

double scalar_curvature_at(const Scenario& s, const std::array<double, 4>& p) {
  Evaluator ev(p);
  return ev(s.geo.scalar_curvature());
}

}  // namespace

PYBIND11_MODULE(_riccilab, m) {
  m.doc() = "verification laboratory for perfect-fluid spacetimes";

  py::register_exception<riccilab::scenario::ScenarioError>(m, "ScenarioError",
                                                            PyExc_ValueError);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("digest", &Scenario::digest)
      .def_readonly("coordinates", &Scenario::coordinates)
      .def_readonly("lambda_", &Scenario::lambda)
      .def_readonly("kappa", &Scenario::kappa)
      .def_readonly("tolerance", &Scenario::tolerance)
      .def_readonly("points", &Scenario::points)
      .def_readonly("seed", &Scenario::seed)
      .def("__repr__", [](const Scenario& s) {
        return "<Scenario " + s.name + " digest=" + s.digest + " points=" +
               std::to_string(s.points.size()) + ">";
      });

  m.def("load_file", &load_file, py::arg("path"), py::arg("tolerance") = py::none(),
        py::arg("seed") = py::none(),
        "Load and validate a scenario file; overrides mirror the CLI flags.");
  m.def("load_text", &load_text, py::arg("text"), py::arg("name") = "inline",
        py::arg("tolerance") = py::none(), py::arg("seed") = py::none());

  m.def(
      "run_json",
      [](const Scenario& s, const std::string& command) {
        return riccilab::report::render_json(run_report(s, command));
      },
      py::arg("scenario"), py::arg("command") = "report",
      "Run the checks and return the structured report as a JSON string.");
  m.def(
      "run_text",
      [](const Scenario& s, const std::string& command) {
        return riccilab::report::render_text(run_report(s, command));
      },
      py::arg("scenario"), py::arg("command") = "report");
  m.def(
      "overall_pass",
      [](const Scenario& s, const std::string& command) {
        return run_report(s, command).overall_pass;
      },
      py::arg("scenario"), py::arg("command") = "report");

  m.def("ricci", &ricci_at, py::arg("scenario"), py::arg("point"),
        "Ricci tensor components S_ij at a coordinate point.");
  m.def("scalar_curvature", &scalar_curvature_at, py::arg("scenario"), py::arg("point"));
  m.def("digest", &riccilab::scenario::digest_bytes, py::arg("text"),
        "fnv1a-64 content digest, as the report prints it.");
}
