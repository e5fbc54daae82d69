#include "pbgqed/phase_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pbgqed/error.hpp"

namespace pbgqed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double neg_p_log_p(double p) {
  if (p <= 0.0) return 0.0;
  return -p * std::log(std::max(p, 1e-300));
}

}  // namespace

double PhaseGrid::integral() const {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * kTwoPi / static_cast<double>(values.size());
}

NumberDistribution number_distribution(const JointState& state) {
  NumberDistribution d;
  d.probs.resize(state.n_max + 1);
  for (int m = 0; m <= state.n_max; ++m) {
    d.probs[m] = std::norm(state.a[m]) + std::norm(state.b[m]) + std::norm(state.c[m]);
  }
  return d;
}

int default_grid_size(int n_max) {
  const int m = std::max(1024, 4 * n_max);
  return m + (m % 2);
}

PhaseGrid phase_distribution(const JointState& state, int grid_size) {
  if (grid_size < 4 * state.n_max || grid_size < 4) {
    throw ConfigError("phase grid size " + std::to_string(grid_size) +
                          " is below 4 n_max = " + std::to_string(4 * state.n_max),
                      "output.grid_size");
  }
  if (grid_size % 2 != 0) {
    throw ConfigError("phase grid size must be even for Simpson quadrature", "output.grid_size");
  }

  // Field coherences summed along each off-diagonal: s_d = sum_m rho_{m+d,m},
  // ascending m.
  const int n_max = state.n_max;
  std::vector<cplx> diagonal_sums(n_max + 1, cplx{});
  for (int d = 1; d <= n_max; ++d) {
    cplx s{};
    for (int m = 0; m + d <= n_max; ++m) {
      const int n = m + d;
      s += state.a[n] * std::conj(state.a[m]) + state.b[n] * std::conj(state.b[m]) +
           state.c[n] * std::conj(state.c[m]);
    }
    diagonal_sums[d] = s;
  }

  PhaseGrid grid;
  grid.theta0 = state.beta_phase;
  grid.theta.resize(grid_size);
  grid.values.resize(grid_size);
  const double step = kTwoPi / grid_size;
  for (int k = 0; k < grid_size; ++k) {
    const double theta = -std::numbers::pi + step * k;
    grid.theta[k] = theta;
    const double phys = theta + grid.theta0;
    // Re(s_d e^{-i d phi}) = A cos(d phi) + B sin(d phi).
    const cplx rotation = std::polar(1.0, -phys);
    cplx phase{1.0, 0.0};
    double sum = 0.0;
    for (int d = 1; d <= n_max; ++d) {
      phase *= rotation;
      sum += (diagonal_sums[d] * phase).real();
    }
    grid.values[k] = (1.0 + 2.0 * sum) / kTwoPi;
  }
  return grid;
}

double number_entropy(const NumberDistribution& dist) {
  double h = 0.0;
  for (double p : dist.probs) h += neg_p_log_p(p);
  return h;
}

double phase_entropy(const PhaseGrid& grid) {
  const std::size_t m = grid.values.size();
  if (m == 0) return 0.0;
  const double step = kTwoPi / static_cast<double>(m);
  if (m % 2 != 0) {
    double sum = 0.0;
    for (double v : grid.values) sum += neg_p_log_p(v);
    return sum * step;
  }
  // Closed periodic Simpson: nodes 0..M with f(M) = f(0); weights 1,4,2,...,4,1.
  double sum = 2.0 * neg_p_log_p(grid.values[0]);
  for (std::size_t k = 1; k < m; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * neg_p_log_p(grid.values[k]);
  return sum * step / 3.0;
}

EntropyPair entropy_pair(const JointState& state, int grid_size) {
  EntropyPair out;
  out.r_n = number_entropy(number_distribution(state));
  out.r_psi = phase_entropy(phase_distribution(state, grid_size));
  out.sum = out.r_n + out.r_psi;
  const double bound = std::log(kTwoPi);
  out.bound_satisfied = out.sum >= bound;
  if (out.sum < bound - kEntropyBoundTolerance) {
    throw NumericalError("entropic uncertainty bound violated: R_N + R_psi = " +
                         std::to_string(out.sum) + " < ln(2 pi)");
  }
  return out;
}

}  // namespace pbgqed
