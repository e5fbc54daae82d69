#pragma once

// Exact dressed-state dynamics of a three-level atom coupled to one cavity
// mode. The Hamiltonian only links the three atom/photon states of a chain
// (one "manifold"), so each manifold is a 3x3 real symmetric problem solved
// in closed form and the full state evolves manifold by manifold.
//
// Time is the scaled time lambda_1 t; detunings and couplings are in units
// of lambda_1.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Core>

namespace pbgqed {

using cplx = std::complex<double>;

/// Level ordering follows the chain: level 1 is the reference level of the
/// manifold and carries Delta_1, level 3 carries Delta_2.
///  - xi:     |1,n> <-> |2,n+1> <-> |3,n+2>   (ladder, level 1 on top)
///  - v:      |1,n> <-> |2,n+1> <-> |3,n>     (level 2 is the shared ground)
///  - lambda: |1,n> <-> |2,n-1> <-> |3,n>     (level 2 is the shared upper)
enum class Configuration { xi, v, lambda };

struct AtomConfig {
  Configuration configuration = Configuration::xi;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double coupling_ratio = 1.0;  // lambda_2 / lambda_1, must be > 0
  /// Overall multiplier on both couplings (lambda_eff / lambda_1). Used by
  /// mode-frequency sweeps; a negative value is a pure gauge sign.
  double coupling_scale = 1.0;
};

/// Photon-number offsets of the three chain states relative to the manifold
/// index.
std::array<int, 3> chain_offsets(Configuration configuration);

/// Lowest and highest manifold index that touches photon numbers 0..n_max.
int lowest_manifold(Configuration configuration);
int highest_manifold(Configuration configuration, int n_max);

struct ManifoldSystem {
  int n = 0;
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  double v1 = 0.0, v2 = 0.0;
  std::array<int, 3> photons{};  // physical photon number of each chain state

  Eigen::Matrix3d matrix() const;
};

inline constexpr int kNoCutoff = -1;

/// Chain Hamiltonian of manifold n. Chain states with a photon number below
/// zero or above n_max (when given) do not exist; their couplings are zero.
/// Throws std::domain_error for n below lowest_manifold().
ManifoldSystem build_manifold(const AtomConfig& config, int n, int n_max = kNoCutoff);

enum class SolveMethod { closed_form, eigen_fallback };

/// Dressed solution of one manifold. In closed form, row j of `m` is
/// (1, x_j, y_j) and z_j is its eigenvalue, so G_j = A + x_j B + y_j C evolves
/// as exp(-i z_j t). The fallback stores orthonormal eigenvectors as rows of
/// `m` and leaves x, y as NaN.
struct DressedSolution {
  std::array<double, 3> z{};
  std::array<double, 3> x{};
  std::array<double, 3> y{};
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d m_inv = Eigen::Matrix3d::Identity();
  double det = 1.0;
  SolveMethod method = SolveMethod::closed_form;
};

/// Relative eigenvalue gap (and relative coupling size) below which the
/// closed form is abandoned for a symmetric eigensolver.
inline constexpr double kDegeneracyTolerance = 1e-8;

/// Eigenvalues z1 <= z2 <= z3 by the trigonometric form of Cardano's
/// formula, polished with Newton steps on the characteristic cubic.
std::array<double, 3> cubic_eigenvalues(const ManifoldSystem& sys);

DressedSolution solve_cubic(const ManifoldSystem& sys);

using Amplitudes3 = std::array<cplx, 3>;

/// Closed-form amplitudes at scaled time t: F(t) = M^-1 diag(e^{-i z t}) M F(0).
/// t == 0 returns the input unchanged.
Amplitudes3 propagate_manifold(const DressedSolution& sol, const Amplitudes3& initial, double t);

/// Truncated atom-field pure state. a[n], b[n], c[n] are the amplitudes of
/// atomic levels 1, 2, 3 with n photons in the mode, n = 0..n_max.
struct JointState {
  int n_max = 0;
  std::vector<cplx> a, b, c;
  double nbar = 0.0;
  double beta_phase = 0.0;
  double t = 0.0;

  static JointState zeros(int n_max);

  /// Amplitude of atomic level (1..3) with `photons` photons; zero outside
  /// the truncated space.
  cplx amplitude(int level, int photons) const;
  cplx& at(int level, int photons);

  /// Sum of |amplitude|^2 in ascending photon order, levels 1..3 per n.
  double norm() const;
  /// Probability of photon numbers strictly above n_max - depth.
  double tail_mass(int depth = 5) const;
};

/// ceil(nbar + 10 sqrt(nbar) + 15)
int default_cutoff(double nbar);

inline constexpr double kTailTolerance = 1e-10;

/// Atom in `atom_level` (1..3), field in the coherent state with mean photon
/// number nbar and phase beta. Throws TruncationError when the Poisson mass
/// above n_max - 5 reaches kTailTolerance, std::domain_error on bad input.
JointState initial_state(int atom_level, double nbar, double beta_phase, int n_max);

/// Precomputed dressed solutions for repeated evaluation of one initial
/// state at many times.
class Evolution {
 public:
  Evolution(JointState initial, const AtomConfig& config);

  JointState at(double t) const;
  const JointState& initial() const { return initial_; }
  const AtomConfig& config() const { return config_; }

 private:
  struct Manifold {
    ManifoldSystem system;
    DressedSolution solution;
    Amplitudes3 amplitudes;
  };

  JointState initial_;
  AtomConfig config_;
  std::vector<Manifold> manifolds_;
};

/// Evolve every manifold of state0 to scaled time t.
JointState evolve(const JointState& state0, const AtomConfig& config, double t);

}  // namespace pbgqed
