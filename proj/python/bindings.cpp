#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbgqed/config.hpp"
#include "pbgqed/entanglement.hpp"
#include "pbgqed/error.hpp"
#include "pbgqed/medium.hpp"
#include "pbgqed/phase_entropy.hpp"
#include "pbgqed/scenario.hpp"

namespace py = pybind11;
using namespace pbgqed;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dressed-state dynamics, entanglement and phase entropy of a three-level atom "
            "in a photonic-crystal cavity";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  auto numerical_error = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  (void)config_error;
  (void)numerical_error;

  // medium
  py::class_<UniaxialTensor>(m, "UniaxialTensor")
      .def_readonly("eps_par", &UniaxialTensor::eps_par)
      .def_readonly("eps_z", &UniaxialTensor::eps_z)
      .def("__repr__", [](const UniaxialTensor& t) {
        return "UniaxialTensor(eps_par=" + format_number(t.eps_par) + ", eps_z=" + format_number(t.eps_z) + ")";
      });
  m.def(
      "effective_permittivity",
      [](double eta_a, double d_a, double eta_b, double d_b) {
        return effective_permittivity({eta_a, d_a, eta_b, d_b});
      },
      py::arg("eta_a"), py::arg("d_a"), py::arg("eta_b"), py::arg("d_b"));

  py::class_<CouplingModel>(m, "CouplingModel")
      .def(py::init<double, double, double>(), py::arg("omega_ratio"), py::arg("omega_l_ratio"),
           py::arg("eps_s"))
      .def_property_readonly("pole", &CouplingModel::pole)
      .def_property_readonly("pole_squared", &CouplingModel::pole_squared)
      .def_property_readonly("local_field", &CouplingModel::local_field);
  m.def(
      "coupling_lambda",
      [](double omega_ratio, double omega_l_ratio, double eps_s) {
        return coupling_lambda(CouplingModel(omega_ratio, omega_l_ratio, eps_s));
      },
      py::arg("omega_ratio"), py::arg("omega_l_ratio"), py::arg("eps_s"),
      "Coupling factor, or None on the pole.");

  py::enum_<DispersionForm>(m, "DispersionForm")
      .value("as_printed", DispersionForm::as_printed)
      .value("corrected", DispersionForm::corrected);
  m.def(
      "solve_dispersion",
      [](double omega, double slab_width, double eps_slab, std::pair<double, double> crystal1,
         std::pair<double, double> crystal2, double k_lo, double k_hi, int scan_points,
         DispersionForm form) {
        return solve_dispersion(omega, {slab_width, eps_slab}, {crystal1.first, crystal1.second},
                                {crystal2.first, crystal2.second}, {k_lo, k_hi, scan_points}, form);
      },
      py::arg("omega"), py::arg("slab_width"), py::arg("eps_slab"), py::arg("crystal1"),
      py::arg("crystal2"), py::arg("k_lo"), py::arg("k_hi"), py::arg("scan_points") = 2000,
      py::arg("form") = DispersionForm::as_printed,
      "In-plane wavenumbers (1/angstrom) of interface modes; crystals as (eps_par, eps_z).");

  // dressed core
  py::enum_<Configuration>(m, "Configuration")
      .value("xi", Configuration::xi)
      .value("v", Configuration::v)
      .value("lambda_", Configuration::lambda);

  py::class_<AtomConfig>(m, "AtomConfig")
      .def(py::init([](Configuration c, double d1, double d2, double ratio, double scale) {
             return AtomConfig{c, d1, d2, ratio, scale};
           }),
           py::arg("configuration") = Configuration::xi, py::arg("delta1") = 0.0,
           py::arg("delta2") = 0.0, py::arg("coupling_ratio") = 1.0, py::arg("coupling_scale") = 1.0)
      .def_readwrite("configuration", &AtomConfig::configuration)
      .def_readwrite("delta1", &AtomConfig::delta1)
      .def_readwrite("delta2", &AtomConfig::delta2)
      .def_readwrite("coupling_ratio", &AtomConfig::coupling_ratio)
      .def_readwrite("coupling_scale", &AtomConfig::coupling_scale);

  m.def(
      "manifold_eigenvalues",
      [](const AtomConfig& c, int n) { return cubic_eigenvalues(build_manifold(c, n)); },
      py::arg("config"), py::arg("n"));

  py::class_<JointState>(m, "JointState")
      .def_readonly("n_max", &JointState::n_max)
      .def_readonly("a", &JointState::a)
      .def_readonly("b", &JointState::b)
      .def_readonly("c", &JointState::c)
      .def_readonly("nbar", &JointState::nbar)
      .def_readonly("beta_phase", &JointState::beta_phase)
      .def_readonly("t", &JointState::t)
      .def("norm", &JointState::norm);
  m.def("default_cutoff", &default_cutoff, py::arg("nbar"));
  m.def(
      "initial_state",
      [](int level, double nbar, double beta, std::optional<int> n_max) {
        return initial_state(level, nbar, beta, n_max.value_or(default_cutoff(nbar)));
      },
      py::arg("atom_level"), py::arg("nbar"), py::arg("beta_phase") = 0.0,
      py::arg("n_max") = py::none());
  m.def("evolve", &evolve, py::arg("state"), py::arg("config"), py::arg("t"));

  // entanglement
  m.def("reduced_density", [](const JointState& s) { return reduce_atom(s).rho; }, py::arg("state"));
  m.def(
      "concurrence", [](const JointState& s) { return pure_concurrence(reduce_atom(s)); },
      py::arg("state"));
  m.def(
      "wootters_concurrence",
      [](const Eigen::Matrix4cd& rho) { return wootters_concurrence({rho}); }, py::arg("rho"));
  m.def(
      "entanglement_of_formation",
      [](double c) { return entanglement_of_formation(c).eof; }, py::arg("concurrence"),
      "Entanglement of formation in nats.");

  // phase entropy
  m.def(
      "number_distribution", [](const JointState& s) { return number_distribution(s).probs; },
      py::arg("state"));
  m.def(
      "phase_distribution",
      [](const JointState& s, std::optional<int> grid) {
        const auto g = phase_distribution(s, grid.value_or(default_grid_size(s.n_max)));
        return std::make_pair(g.theta, g.values);
      },
      py::arg("state"), py::arg("grid_size") = py::none(), "(theta, P(theta)) on [-pi, pi).");
  m.def(
      "entropies",
      [](const JointState& s, std::optional<int> grid) {
        const auto e = entropy_pair(s, grid.value_or(default_grid_size(s.n_max)));
        return py::make_tuple(e.r_n, e.r_psi, e.sum);
      },
      py::arg("state"), py::arg("grid_size") = py::none(), "(R_N, R_psi, R_N + R_psi).");

  // scenarios
  py::class_<ObservableRow>(m, "ObservableRow")
      .def_readonly("axis", &ObservableRow::axis)
      .def_readonly("pole", &ObservableRow::pole)
      .def_readonly("concurrence", &ObservableRow::concurrence)
      .def_readonly("r_n", &ObservableRow::r_n)
      .def_readonly("r_psi", &ObservableRow::r_psi)
      .def_readonly("entropy_sum", &ObservableRow::entropy_sum)
      .def_readonly("populations", &ObservableRow::populations)
      .def_readonly("norm", &ObservableRow::norm);
  py::class_<ScenarioConfig>(m, "ScenarioConfig");
  m.def("preset_names", &preset_names);
  m.def("preset_text", &preset_text, py::arg("name"));
  m.def("parse_config", &parse_config, py::arg("text"),
        py::arg("overrides") = std::vector<std::string>{}, py::arg("source") = "<config>");
  m.def(
      "run_scenario", [](const ScenarioConfig& c) { return run_scenario(c).rows; },
      py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "format_csv",
      [](const std::vector<ObservableRow>& rows) { return format_csv(rows); }, py::arg("rows"));
}
