#pragma once

#include <Eigen/Core>

#include "pbgqed/dressed.hpp"

namespace pbgqed {

/// Reduced density matrix of the atom, rho_ij = <i| tr_field rho |j>.
struct AtomicDensity {
  Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();

  /// Throws NumericalError unless rho is Hermitian (1e-12), unit trace
  /// (1e-10) and has no eigenvalue below -1e-10.
  void validate() const;
};

struct TwoQubitDensity {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
};

struct EntanglementResult {
  double concurrence = 0.0;
  double eof = 0.0;  // nats
  double mu_plus = 1.0;
  double mu_minus = 0.0;
};

/// Upper bound of the pure-state concurrence for a three-level subsystem,
/// sqrt(2 (N - 1) / N) with N = 3.
inline const double kQutritConcurrenceBound = 1.1547005383792515;  // sqrt(4/3)

/// Partial trace over the field. Amplitudes are paired by physical photon
/// number, rho_ij = sum_n f_i(n) conj(f_j(n)).
AtomicDensity reduce_atom(const JointState& state);

/// C = sqrt(2 sum_{i != j} (rho_ii rho_jj - rho_ij rho_ji)) for the reduction
/// of a globally pure state. Radicands down to -1e-12 are clamped to zero;
/// anything more negative throws NumericalError.
double pure_concurrence(const AtomicDensity& rho_a);

/// sqrt(2 (<psi|psi>^2 - tr rho_N^2)) for an arbitrary bipartite pure state
/// given as an N x K amplitude matrix; rho_N = psi psi^dagger.
double bipartite_concurrence(const Eigen::MatrixXcd& psi);

/// Wootters concurrence max(0, s1 - s2 - s3 - s4), s_i the descending square
/// roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
/// Throws std::domain_error if rho is not Hermitian PSD with unit trace
/// (tolerance 1e-10).
double wootters_concurrence(const TwoQubitDensity& rho);

/// Two-qubit entanglement of formation in nats. Throws std::domain_error
/// for C outside [0, 1].
EntanglementResult entanglement_of_formation(double concurrence);

/// Display helper.
inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

}  // namespace pbgqed
