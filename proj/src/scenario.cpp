#include "pbgqed/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pbgqed/entanglement.hpp"
#include "pbgqed/error.hpp"

namespace pbgqed {

std::optional<double> relative_coupling(const MediumBlock& medium, double omega_ratio) {
  const auto lambda = coupling_lambda(medium.coupling_model(omega_ratio));
  const auto reference = coupling_lambda(medium.coupling_model(medium.reference_omega_ratio));
  if (!lambda || !reference || *reference == 0.0) return std::nullopt;
  return medium.coupling_scale * *lambda / *reference;
}

std::vector<double> coupling_poles(const MediumBlock& medium, double lo, double hi) {
  auto gap = [&](double w) {
    const auto model = medium.coupling_model(w);
    return w * w - model.pole_squared();
  };
  constexpr int kScan = 4096;
  std::vector<double> poles;
  double w_prev = lo;
  double g_prev = gap(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double w_next = (i == kScan) ? hi : lo + (hi - lo) * i / kScan;
    const double g_next = gap(w_next);
    if (std::isfinite(g_prev) && std::isfinite(g_next) && (g_prev < 0.0) != (g_next < 0.0)) {
      double a = w_prev, b = w_next, ga = g_prev;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::abs(b); ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = gap(mid);
        if ((gm < 0.0) == (ga < 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      // A sign flip through infinity (2 eps_s + 1 -> 0) is not a pole of lambda.
      if (std::abs(gap(root)) < 1e-6) poles.push_back(root);
    }
    w_prev = w_next;
    g_prev = g_next;
  }
  return poles;
}

ObservableRow observe(const JointState& state, double axis, const OutputBlock& output,
                      int grid_size, PhaseGrid* phase_out) {
  ObservableRow row;
  row.axis = axis;
  row.norm = state.norm();
  if (!(std::abs(row.norm - 1.0) <= kNormTolerance)) {
    throw NumericalError("norm drifted to " + format_number(row.norm) + " at axis value " +
                         format_number(axis));
  }
  const double leak = state.tail_mass(5);
  if (!(leak < kTruncationLeakTolerance)) {
    throw NumericalError("occupation of the top five Fock levels reached " + format_number(leak) +
                         " at axis value " + format_number(axis) + "; raise field.n_max");
  }
  if (output.concurrence || output.populations) {
    const AtomicDensity rho = reduce_atom(state);
    if (output.concurrence) {
      row.concurrence = pure_concurrence(rho);
      if (row.concurrence > kQutritConcurrenceBound + 1e-10) {
        throw NumericalError("concurrence " + format_number(row.concurrence) +
                             " exceeds sqrt(4/3)");
      }
    }
    if (output.populations) {
      for (int i = 0; i < 3; ++i) row.populations[i] = rho.rho(i, i).real();
    }
  }
  if (output.entropies || phase_out) {
    PhaseGrid grid = phase_distribution(state, grid_size);
    if (output.entropies) {
      row.r_n = number_entropy(number_distribution(state));
      row.r_psi = phase_entropy(grid);
      row.entropy_sum = row.r_n + row.r_psi;
      if (row.entropy_sum < std::log(2.0 * std::numbers::pi) - kEntropyBoundTolerance) {
        throw NumericalError("entropic bound violated at axis value " + format_number(axis) +
                             ": R_N + R_psi = " + format_number(row.entropy_sum));
      }
    }
    if (phase_out) *phase_out = std::move(grid);
  }
  return row;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  const auto& sweep = config.sweep;
  const auto& medium = config.medium;
  const auto points = sweep.points();
  ScenarioResult result;
  result.rows.reserve(points.size());

  AtomConfig atom = config.atom_config();
  auto fixed_coupling = [&] {
    const auto g = relative_coupling(medium, medium.omega_ratio);
    if (!g) {
      throw ConfigError("medium.omega_ratio = " + format_number(medium.omega_ratio) +
                            " sits on the coupling pole",
                        "medium.omega_ratio");
    }
    return *g;
  };
  auto make_state = [&](double nbar) {
    const int n_max = config.field.n_max.value_or(default_cutoff(nbar));
    return initial_state(config.atom.atom_start, nbar, config.field.beta_phase, n_max);
  };
  auto grid_for = [&](const JointState& s) {
    return config.output.grid_size.value_or(default_grid_size(s.n_max));
  };
  auto record = [&](std::size_t index, const JointState& state, double axis) {
    const bool dump = config.output.phase_grids && index % config.output.phase_stride == 0;
    PhaseDump phase;
    result.rows.push_back(observe(state, axis, config.output, grid_for(state),
                                  dump ? &phase.grid : nullptr));
    if (dump) {
      phase.row = index;
      phase.axis = axis;
      result.phase_grids.push_back(std::move(phase));
    }
  };

  switch (sweep.axis) {
    case SweepAxis::time: {
      atom.coupling_scale = fixed_coupling();
      const Evolution evolution(make_state(config.field.nbar), atom);
      for (std::size_t i = 0; i < points.size(); ++i) record(i, evolution.at(points[i]), points[i]);
      break;
    }
    case SweepAxis::nbar: {
      atom.coupling_scale = fixed_coupling();
      for (std::size_t i = 0; i < points.size(); ++i) {
        record(i, evolve(make_state(points[i]), atom, sweep.time), points[i]);
      }
      break;
    }
    case SweepAxis::mode_frequency: {
      const JointState initial = make_state(config.field.nbar);
      std::vector<bool> pole(points.size(), false);
      const double h = sweep.spacing();
      for (double w : coupling_poles(medium, sweep.low, sweep.high)) {
        const auto nearest = static_cast<std::size_t>(std::lround((w - sweep.low) / h));
        if (nearest < points.size() && std::abs(points[nearest] - w) <= 0.5 * h) pole[nearest] = true;
      }
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto g = relative_coupling(medium, points[i]);
        if (pole[i] || !g) {
          ObservableRow row;
          row.axis = points[i];
          row.pole = true;
          result.rows.push_back(row);
          continue;
        }
        atom.coupling_scale = *g;
        record(i, evolve(initial, atom, sweep.time), points[i]);
      }
      break;
    }
  }
  return result;
}

}  // namespace pbgqed
