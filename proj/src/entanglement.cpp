#include "pbgqed/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "pbgqed/error.hpp"

namespace pbgqed {

void AtomicDensity::validate() const {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw NumericalError("atomic density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - cplx{1.0, 0.0}) > 1e-10) {
    throw NumericalError("atomic density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw NumericalError("atomic density matrix has a negative eigenvalue");
  }
}

AtomicDensity reduce_atom(const JointState& state) {
  AtomicDensity out;
  const std::vector<cplx>* levels[3] = {&state.a, &state.b, &state.c};
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      cplx sum{};
      for (int n = 0; n <= state.n_max; ++n) sum += (*levels[i])[n] * std::conj((*levels[j])[n]);
      out.rho(i, j) = sum;
      out.rho(j, i) = std::conj(sum);
    }
    out.rho(i, i) = out.rho(i, i).real();
  }
  return out;
}

double pure_concurrence(const AtomicDensity& rho_a) {
  const auto& r = rho_a.rho;
  double radicand = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      radicand += (r(i, i) * r(j, j) - r(i, j) * r(j, i)).real();
    }
  }
  radicand *= 2.0;
  if (radicand < -1e-12) {
    throw NumericalError("pure_concurrence: negative radicand " + std::to_string(radicand) +
                         "; the reduced state is inconsistent with a pure global state");
  }
  return std::sqrt(std::max(radicand, 0.0));
}

double bipartite_concurrence(const Eigen::MatrixXcd& psi) {
  const double norm2 = psi.squaredNorm();
  const Eigen::MatrixXcd rho_n = psi * psi.adjoint();
  const double purity = (rho_n * rho_n).trace().real();
  return std::sqrt(std::max(2.0 * (norm2 * norm2 - purity), 0.0));
}

double wootters_concurrence(const TwoQubitDensity& state) {
  const Eigen::Matrix4cd& rho = state.rho;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::domain_error("wootters_concurrence: density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - cplx{1.0, 0.0}) > 1e-10) {
    throw std::domain_error("wootters_concurrence: density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::domain_error("wootters_concurrence: density matrix is not positive semidefinite");
  }

  // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1).
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  // With rho = V V^dagger (columns sqrt(p_i) e_i), the square roots of the
  // eigenvalues of rho (sy x sy) rho* (sy x sy) are the singular values of
  // V^dagger (sy x sy) V*. No square root of a near-zero eigenvalue is taken.
  const Eigen::Vector4d weights = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd v = es.eigenvectors() * weights.cast<cplx>().asDiagonal();
  const Eigen::Matrix4cd tau = v.adjoint() * flip * v.conjugate();
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4cd>(tau).singularValues();
  std::array<double, 4> s{sv(0), sv(1), sv(2), sv(3)};
  std::sort(s.begin(), s.end(), std::greater<>());
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

EntanglementResult entanglement_of_formation(double concurrence) {
  if (!(concurrence >= 0.0 && concurrence <= 1.0)) {
    throw std::domain_error("entanglement_of_formation: concurrence must lie in [0, 1]");
  }
  EntanglementResult out;
  out.concurrence = concurrence;
  const double root = std::sqrt(std::max(0.0, 1.0 - concurrence * concurrence));
  out.mu_plus = 0.5 * (1.0 + root);
  out.mu_minus = concurrence * concurrence / (4.0 * out.mu_plus);  // mu+ mu- = C^2 / 4
  auto h = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  out.eof = h(out.mu_plus) + h(out.mu_minus);
  return out;
}

}  // namespace pbgqed
