#pragma once

// Photon-number statistics, the continuous-limit Pegg-Barnett phase
// distribution of the cavity field, and the number/phase Shannon entropies.

#include <vector>

#include "pbgqed/dressed.hpp"

namespace pbgqed {

struct NumberDistribution {
  std::vector<double> probs;  // P_m, m = 0..n_max
};

/// P(theta) sampled on theta_k = -pi + 2 pi k / M, k = 0..M-1. theta is
/// measured from the reference phase theta0.
struct PhaseGrid {
  std::vector<double> theta;
  std::vector<double> values;
  double theta0 = 0.0;

  /// Periodic trapezoidal integral over [-pi, pi).
  double integral() const;
};

struct EntropyPair {
  double r_n = 0.0;
  double r_psi = 0.0;
  double sum = 0.0;
  bool bound_satisfied = true;  // sum >= ln(2 pi), no tolerance
};

inline constexpr double kEntropyBoundTolerance = 1e-6;

/// Field photon-number distribution: the atom is traced out, so P_m sums
/// |amplitude|^2 of all three levels at physical photon number m.
NumberDistribution number_distribution(const JointState& state);

/// max(1024, 4 n_max), rounded up to an even number.
int default_grid_size(int n_max);

/// P(theta) = (1/2pi) (1 + 2 sum_{n>m} [A_nm cos((n-m)theta) + B_nm sin((n-m)theta)])
/// with A_nm + i B_nm = sum over levels of amp_n conj(amp_m), evaluated at
/// physical phase theta + theta0, theta0 = state.beta_phase.
/// Throws ConfigError when grid_size < 4 n_max or is odd.
PhaseGrid phase_distribution(const JointState& state, int grid_size);

/// -sum P_m ln P_m with 0 ln 0 = 0.
double number_entropy(const NumberDistribution& dist);

/// -integral P ln P over [-pi, pi) by periodic composite Simpson.
double phase_entropy(const PhaseGrid& grid);

/// Both entropies for one state. Throws NumericalError if the sum falls
/// below ln(2 pi) by more than kEntropyBoundTolerance.
EntropyPair entropy_pair(const JointState& state, int grid_size);

}  // namespace pbgqed
