#include "pbgqed/dressed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "pbgqed/error.hpp"

namespace pbgqed {

std::array<int, 3> chain_offsets(Configuration configuration) {
  switch (configuration) {
    case Configuration::xi:
      return {0, 1, 2};
    case Configuration::v:
      return {0, 1, 0};
    case Configuration::lambda:
      return {0, -1, 0};
  }
  throw std::domain_error("unknown configuration");
}

int lowest_manifold(Configuration configuration) {
  const auto o = chain_offsets(configuration);
  return -*std::max_element(o.begin(), o.end());
}

int highest_manifold(Configuration configuration, int n_max) {
  const auto o = chain_offsets(configuration);
  return n_max - *std::min_element(o.begin(), o.end());
}

Eigen::Matrix3d ManifoldSystem::matrix() const {
  Eigen::Matrix3d h;
  h << r1, v1, 0.0,
       v1, r2, v2,
       0.0, v2, r3;
  return h;
}

ManifoldSystem build_manifold(const AtomConfig& config, int n, int n_max) {
  if (n < lowest_manifold(config.configuration)) {
    throw std::domain_error("build_manifold: manifold index " + std::to_string(n) +
                            " has no physical states");
  }
  const auto o = chain_offsets(config.configuration);
  ManifoldSystem sys;
  sys.n = n;
  for (int i = 0; i < 3; ++i) sys.photons[i] = n + o[i];

  auto exists = [&](int p) { return p >= 0 && (n_max == kNoCutoff || p <= n_max); };
  // <m+1| a^dagger |m> = sqrt(m + 1): the larger photon number of the pair.
  auto ladder = [&](int p, int q) {
    return (exists(p) && exists(q)) ? std::sqrt(static_cast<double>(std::max(p, q))) : 0.0;
  };
  sys.r1 = config.delta1;
  sys.r2 = 0.0;
  sys.r3 = config.delta2;
  sys.v1 = config.coupling_scale * ladder(sys.photons[0], sys.photons[1]);
  sys.v2 = config.coupling_scale * config.coupling_ratio * ladder(sys.photons[1], sys.photons[2]);
  return sys;
}

namespace {

// det(zI - H) for the tridiagonal chain matrix.
double characteristic(const ManifoldSystem& s, double z) {
  return (z - s.r1) * (z - s.r2) * (z - s.r3) - s.v2 * s.v2 * (z - s.r1) -
         s.v1 * s.v1 * (z - s.r3);
}

double characteristic_slope(const ManifoldSystem& s, double z) {
  const double a = z - s.r1, b = z - s.r2, c = z - s.r3;
  return a * b + a * c + b * c - s.v1 * s.v1 - s.v2 * s.v2;
}

double spectral_scale(const ManifoldSystem& s) {
  return std::max({std::abs(s.r1), std::abs(s.r2), std::abs(s.r3), std::abs(s.v1),
                   std::abs(s.v2)});
}

DressedSolution eigen_fallback(const ManifoldSystem& sys) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(sys.matrix());
  DressedSolution sol;
  sol.method = SolveMethod::eigen_fallback;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int j = 0; j < 3; ++j) {
    sol.z[j] = es.eigenvalues()(j);
    sol.x[j] = nan;
    sol.y[j] = nan;
  }
  sol.m_inv = es.eigenvectors();
  sol.m = sol.m_inv.transpose();
  sol.det = sol.m.determinant();
  return sol;
}

}  // namespace

std::array<double, 3> cubic_eigenvalues(const ManifoldSystem& sys) {
  // Shift by the mean diagonal; the traceless remainder B has characteristic
  // polynomial w^3 - (tr B^2 / 2) w - det B.
  const double shift = (sys.r1 + sys.r2 + sys.r3) / 3.0;
  const double b1 = sys.r1 - shift, b2 = sys.r2 - shift, b3 = sys.r3 - shift;
  const double v1s = sys.v1 * sys.v1, v2s = sys.v2 * sys.v2;
  const double half_tr = 0.5 * (b1 * b1 + b2 * b2 + b3 * b3) + v1s + v2s;
  const double det_b = b1 * b2 * b3 - b1 * v2s - b3 * v1s;

  std::array<double, 3> z{shift, shift, shift};
  if (half_tr > 0.0) {
    const double p = std::sqrt(half_tr / 3.0);
    const double arg = std::clamp(det_b / (2.0 * p * p * p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    constexpr double third_turn = 2.0 * std::numbers::pi / 3.0;
    for (int k = 0; k < 3; ++k) z[k] = shift + 2.0 * p * std::cos(phi - third_turn * k);
  }
  for (double& root : z) {
    for (int it = 0; it < 3; ++it) {
      const double f = characteristic(sys, root);
      const double df = characteristic_slope(sys, root);
      if (df == 0.0) break;
      const double next = root - f / df;
      if (!(std::abs(characteristic(sys, next)) < std::abs(f))) break;
      root = next;
    }
  }
  std::sort(z.begin(), z.end());
  return z;
}

DressedSolution solve_cubic(const ManifoldSystem& sys) {
  const double scale = spectral_scale(sys);
  if (scale == 0.0) return eigen_fallback(sys);

  const double threshold = kDegeneracyTolerance * scale;
  if (std::abs(sys.v1) < threshold || std::abs(sys.v2) < threshold) return eigen_fallback(sys);

  DressedSolution sol;
  sol.z = cubic_eigenvalues(sys);
  const double radius = std::max(std::abs(sol.z[0]), std::abs(sol.z[2]));
  const double min_gap = std::min(sol.z[1] - sol.z[0], sol.z[2] - sol.z[1]);
  if (min_gap < kDegeneracyTolerance * std::max(radius, scale)) return eigen_fallback(sys);

  // Row (1, x, y) is a left eigenvector: first column gives z = r1 + v1 x,
  // second column gives v1 + r2 x + v2 y = z x.
  for (int j = 0; j < 3; ++j) {
    const double z = sol.z[j];
    sol.x[j] = (z - sys.r1) / sys.v1;
    sol.y[j] = ((z - sys.r2) * sol.x[j] - sys.v1) / sys.v2;
    sol.m.row(j) << 1.0, sol.x[j], sol.y[j];
  }
  const auto& x = sol.x;
  const auto& y = sol.y;
  sol.det = x[0] * y[1] + x[1] * y[2] + x[2] * y[0] - x[0] * y[2] - x[1] * y[0] - x[2] * y[1];

  double row_scale = 1.0;
  for (int j = 0; j < 3; ++j) row_scale *= sol.m.row(j).norm();
  if (!(std::abs(sol.det) > 1e-12 * row_scale)) return eigen_fallback(sys);

  // Adjugate / D.
  Eigen::Matrix3d adj;
  adj << x[1] * y[2] - y[1] * x[2], x[2] * y[0] - y[2] * x[0], x[0] * y[1] - y[0] * x[1],
         y[1] - y[2],               y[2] - y[0],               y[0] - y[1],
         x[2] - x[1],               x[0] - x[2],               x[1] - x[0];
  sol.m_inv = adj / sol.det;
  return sol;
}

Amplitudes3 propagate_manifold(const DressedSolution& sol, const Amplitudes3& initial, double t) {
  if (t == 0.0) return initial;
  std::array<cplx, 3> dressed{};
  for (int j = 0; j < 3; ++j) {
    const cplx g0 = sol.m(j, 0) * initial[0] + sol.m(j, 1) * initial[1] + sol.m(j, 2) * initial[2];
    dressed[j] = g0 * std::polar(1.0, -sol.z[j] * t);
  }
  Amplitudes3 out{};
  for (int i = 0; i < 3; ++i) {
    out[i] = sol.m_inv(i, 0) * dressed[0] + sol.m_inv(i, 1) * dressed[1] +
             sol.m_inv(i, 2) * dressed[2];
  }
  return out;
}

JointState JointState::zeros(int n_max) {
  if (n_max < 0) throw std::domain_error("JointState: n_max must be non-negative");
  JointState s;
  s.n_max = n_max;
  s.a.assign(n_max + 1, cplx{});
  s.b.assign(n_max + 1, cplx{});
  s.c.assign(n_max + 1, cplx{});
  return s;
}

cplx JointState::amplitude(int level, int photons) const {
  if (photons < 0 || photons > n_max) return {};
  switch (level) {
    case 1:
      return a[photons];
    case 2:
      return b[photons];
    case 3:
      return c[photons];
  }
  throw std::domain_error("JointState: atomic level must be 1, 2 or 3");
}

cplx& JointState::at(int level, int photons) {
  if (photons < 0 || photons > n_max) throw std::out_of_range("JointState: photon number out of range");
  switch (level) {
    case 1:
      return a[photons];
    case 2:
      return b[photons];
    case 3:
      return c[photons];
  }
  throw std::domain_error("JointState: atomic level must be 1, 2 or 3");
}

double JointState::norm() const {
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) sum += std::norm(a[n]) + std::norm(b[n]) + std::norm(c[n]);
  return sum;
}

double JointState::tail_mass(int depth) const {
  double sum = 0.0;
  for (int n = std::max(0, n_max - depth + 1); n <= n_max; ++n) {
    sum += std::norm(a[n]) + std::norm(b[n]) + std::norm(c[n]);
  }
  return sum;
}

int default_cutoff(double nbar) {
  return static_cast<int>(std::ceil(nbar + 10.0 * std::sqrt(nbar) + 15.0));
}

JointState initial_state(int atom_level, double nbar, double beta_phase, int n_max) {
  if (atom_level < 1 || atom_level > 3) {
    throw std::domain_error("initial_state: atomic level must be 1, 2 or 3");
  }
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::domain_error("initial_state: mean photon number must be finite and >= 0");
  }
  JointState s = JointState::zeros(n_max);
  s.nbar = nbar;
  s.beta_phase = beta_phase;

  // Poisson weights in log space: ln p_n = -nbar + n ln nbar - ln n!
  std::vector<double> prob(n_max + 1, 0.0);
  if (nbar == 0.0) {
    prob[0] = 1.0;
  } else {
    const double log_nbar = std::log(nbar);
    for (int n = 0; n <= n_max; ++n) {
      prob[n] = std::exp(-nbar + n * log_nbar - std::lgamma(n + 1.0));
    }
  }
  double kept = 0.0;
  for (int n = 0; n <= n_max; ++n) kept += prob[n];
  // Mass above n_max - 5: the part of the kept tail plus everything beyond n_max.
  double tail = std::max(0.0, 1.0 - kept);
  for (int n = std::max(0, n_max - 4); n <= n_max; ++n) tail += prob[n];
  if (!(tail < kTailTolerance)) {
    throw TruncationError("initial_state: Fock cutoff " + std::to_string(n_max) +
                              " too small for nbar = " + std::to_string(nbar) +
                              " (tail mass " + std::to_string(tail) + ")",
                          tail);
  }
  const double renorm = 1.0 / std::sqrt(kept);
  for (int n = 0; n <= n_max; ++n) {
    s.at(atom_level, n) = std::polar(std::sqrt(prob[n]) * renorm, n * beta_phase);
  }
  return s;
}

Evolution::Evolution(JointState initial, const AtomConfig& config)
    : initial_(std::move(initial)), config_(config) {
  if (!(config.coupling_ratio > 0.0)) {
    throw std::domain_error("AtomConfig: coupling_ratio must be positive");
  }
  const auto c = config.configuration;
  for (int n = lowest_manifold(c); n <= highest_manifold(c, initial_.n_max); ++n) {
    Manifold m;
    m.system = build_manifold(config, n, initial_.n_max);
    bool occupied = false;
    for (int i = 0; i < 3; ++i) {
      m.amplitudes[i] = initial_.amplitude(i + 1, m.system.photons[i]);
      occupied = occupied || m.amplitudes[i] != cplx{};
    }
    if (!occupied) continue;
    m.solution = solve_cubic(m.system);
    manifolds_.push_back(std::move(m));
  }
}

JointState Evolution::at(double t) const {
  if (t == 0.0) return initial_;
  JointState out = JointState::zeros(initial_.n_max);
  out.nbar = initial_.nbar;
  out.beta_phase = initial_.beta_phase;
  out.t = initial_.t + t;
  for (const auto& m : manifolds_) {
    const auto amps = propagate_manifold(m.solution, m.amplitudes, t);
    for (int i = 0; i < 3; ++i) {
      const int p = m.system.photons[i];
      if (p >= 0 && p <= out.n_max) out.at(i + 1, p) = amps[i];
    }
  }
  return out;
}

JointState evolve(const JointState& state0, const AtomConfig& config, double t) {
  if (t == 0.0) return state0;
  return Evolution(state0, config).at(t);
}

}  // namespace pbgqed
