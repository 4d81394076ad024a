#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lpl/algebra.hpp"
#include "lpl/diagnostics.hpp"
#include "lpl/noise.hpp"
#include "lpl/run.hpp"
#include "lpl/sphere.hpp"
#include "lpl/verify.hpp"

namespace py = pybind11;
using namespace lpl;

namespace {

sphere::VortexConfig make_vortex_config(double R,
                                        const std::vector<Eigen::Vector3d>& positions,
                                        const std::vector<double>& strengths) {
  sphere::VortexConfig c;
  c.R = R;
  c.positions = positions;
  c.strengths = strengths;
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structure-preserving stochastic simulation of Lie-Poisson and "
            "Langevin systems";
  m.attr("__version__") = run::kVersion;

  py::register_exception<algebra::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<sphere::CollisionError>(m, "CollisionError", PyExc_RuntimeError);

  py::class_<algebra::Casimir>(m, "Casimir")
      .def(py::init([](std::string name, std::function<double(const algebra::Vec&)> value,
                       std::function<algebra::Vec(const algebra::Vec&)> gradient) {
             return algebra::Casimir{std::move(name), std::move(value),
                                     std::move(gradient)};
           }),
           py::arg("name"), py::arg("value"), py::arg("gradient"))
      .def_readonly("name", &algebra::Casimir::name);

  py::class_<algebra::LieStructure>(m, "LieStructure")
      .def(py::init<std::vector<algebra::Mat>, algebra::Mat,
                    std::vector<algebra::Casimir>>(),
           py::arg("structure_constants"), py::arg("gamma"),
           py::arg("casimirs") = std::vector<algebra::Casimir>{})
      .def_property_readonly("dim", &algebra::LieStructure::dim)
      .def("bracket", &algebra::LieStructure::bracket, py::arg("xi"), py::arg("eta"))
      .def("ad_star", &algebra::LieStructure::ad_star, py::arg("xi"), py::arg("mu"))
      .def("sharp", &algebra::LieStructure::sharp, py::arg("mu"))
      .def("flat", &algebra::LieStructure::flat, py::arg("xi"))
      .def("double_bracket_drift", &algebra::LieStructure::double_bracket_drift,
           py::arg("grad_h"), py::arg("mu"), py::arg("theta"))
      .def("casimir_values", &algebra::LieStructure::casimir_values, py::arg("mu"));

  m.def(
      "make_so3",
      [](std::optional<algebra::Mat> gamma) {
        return gamma ? algebra::make_so3(*gamma) : algebra::make_so3();
      },
      py::arg("gamma") = std::nullopt);
  m.def("make_heavy_top_structure", &algebra::make_heavy_top_structure);

  m.def(
      "brownian_increments",
      [](int n_components, double t0, double t1, int n_steps, std::uint64_t seed,
         std::uint64_t stream) {
        return noise::brownian_path(n_components, t0, t1, n_steps, seed, stream)
            .increments;
      },
      py::arg("n_components"), py::arg("t0"), py::arg("t1"), py::arg("n_steps"),
      py::arg("seed"), py::arg("stream") = 0,
      "Deterministic Brownian increments; component 0 is the time clock.");

  m.def(
      "vortex_hamiltonian",
      [](double R, const std::vector<Eigen::Vector3d>& positions,
         const std::vector<double>& strengths) {
        return sphere::vortex_hamiltonian(make_vortex_config(R, positions, strengths));
      },
      py::arg("R"), py::arg("positions"), py::arg("strengths"));

  m.def(
      "vortex_drift",
      [](double R, const std::vector<Eigen::Vector3d>& positions,
         const std::vector<double>& strengths, double theta) {
        return sphere::vortex_drift(make_vortex_config(R, positions, strengths), theta);
      },
      py::arg("R"), py::arg("positions"), py::arg("strengths"), py::arg("theta") = 0.0);

  m.def(
      "harmonic_gram",
      [](int ell_max, double R) {
        return sphere::harmonic_gram(sphere::HarmonicBasis(ell_max, R));
      },
      py::arg("ell_max"), py::arg("R") = 1.0);

  m.def("ks_statistic", &diagnostics::ks_statistic, py::arg("a"), py::arg("b"));
  m.def("ks_critical_1pct", &diagnostics::ks_critical_1pct, py::arg("n"), py::arg("m"));

  m.def(
      "run_json",
      [](const std::string& config_json, const std::string& out_dir, int n_workers) {
        run::execute(nlohmann::json::parse(config_json), out_dir, n_workers);
      },
      py::arg("config_json"), py::arg("out_dir"), py::arg("n_workers") = 1,
      py::call_guard<py::gil_scoped_release>(),
      "Execute a run config (JSON text), writing trajectory.csv and summary.json.");

  m.def("preset_names", &run::preset_names);
  m.def(
      "preset_json",
      [](const std::string& name) { return run::preset_config(name).dump(2); },
      py::arg("name"));

  m.def(
      "verify_suite",
      [](const std::string& suite) {
        return verify::report(verify::run_suite(suite)).dump(2);
      },
      py::arg("suite"), py::call_guard<py::gil_scoped_release>(),
      "Run a verification suite (invariants, gibbs, convergence, all); returns a "
      "JSON report.");
}
