#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "doctest.h"
#include "oracles.hpp"
#include "pbgqed/dressed.hpp"
#include "pbgqed/error.hpp"

using namespace pbgqed;

namespace {

AtomConfig xi(double d1 = 0.0, double d2 = 0.0, double ratio = 1.0) {
  AtomConfig c;
  c.configuration = Configuration::xi;
  c.delta1 = d1;
  c.delta2 = d2;
  c.coupling_ratio = ratio;
  return c;
}

ManifoldSystem system_of(double r1, double r2, double r3, double v1, double v2) {
  ManifoldSystem s;
  s.r1 = r1;
  s.r2 = r2;
  s.r3 = r3;
  s.v1 = v1;
  s.v2 = v2;
  return s;
}

double max_abs_diff(const JointState& s, const oracle::StateVector& v) {
  return oracle::max_diff(oracle::to_vector(s), v);
}

}  // namespace

TEST_CASE("resonant vacuum chain") {
  const auto s = build_manifold(xi(), 0);
  CHECK(s.r1 == 0.0);
  CHECK(s.r2 == 0.0);
  CHECK(s.r3 == 0.0);
  CHECK(s.v1 == doctest::Approx(1.0));
  CHECK(s.v2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.photons == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("detuned chain carries the detunings on the end states") {
  const auto s = build_manifold(xi(5.0, 5.0), 0);
  CHECK(s.r1 == 5.0);
  CHECK(s.r2 == 0.0);
  CHECK(s.r3 == 5.0);
  CHECK(s.v1 == doctest::Approx(1.0));
  CHECK(s.v2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("ladder matrix elements at n = 10") {
  for (double ratio : {0.5, 1.0, 2.5}) {
    const auto s = build_manifold(xi(1.0, -2.0, ratio), 10);
    CHECK(s.v1 == doctest::Approx(std::sqrt(11.0)).epsilon(1e-15));
    CHECK(s.v2 == doctest::Approx(ratio * std::sqrt(12.0)).epsilon(1e-15));
  }
}

TEST_CASE("chain states outside the truncated space are decoupled") {
  const auto top = build_manifold(xi(), 19, 20);
  CHECK(top.v1 == doctest::Approx(std::sqrt(20.0)));
  CHECK(top.v2 == 0.0);
  const auto below = build_manifold(xi(), -1, 20);
  CHECK(below.v1 == 0.0);
  CHECK(below.v2 == doctest::Approx(std::sqrt(1.0)));
  CHECK_THROWS_AS(build_manifold(xi(), lowest_manifold(Configuration::xi) - 1), std::domain_error);

  AtomConfig lam = xi();
  lam.configuration = Configuration::lambda;
  const auto l0 = build_manifold(lam, 0);
  CHECK(l0.photons == std::array<int, 3>{0, -1, 0});
  CHECK(l0.v1 == 0.0);
  CHECK(l0.v2 == 0.0);
  const auto l3 = build_manifold(lam, 3);
  CHECK(l3.v1 == doctest::Approx(std::sqrt(3.0)));
  CHECK(l3.v2 == doctest::Approx(std::sqrt(3.0)));

  AtomConfig v = xi();
  v.configuration = Configuration::v;
  const auto v3 = build_manifold(v, 3);
  CHECK(v3.photons == std::array<int, 3>{3, 4, 3});
  CHECK(v3.v1 == doctest::Approx(2.0));
  CHECK(v3.v2 == doctest::Approx(2.0));
}

TEST_CASE("decoupled manifold") {
  const auto sol = solve_cubic(system_of(1.0, 2.0, 3.0, 0.0, 0.0));
  CHECK(sol.z[0] == doctest::Approx(1.0));
  CHECK(sol.z[1] == doctest::Approx(2.0));
  CHECK(sol.z[2] == doctest::Approx(3.0));
  const Amplitudes3 f0{cplx{0.6, 0.0}, cplx{0.0, 0.8}, cplx{0.0, 0.0}};
  const double t = 1.7;
  const auto f = propagate_manifold(sol, f0, t);
  CHECK(std::abs(f[0] - f0[0] * std::polar(1.0, -1.0 * t)) < 1e-14);
  CHECK(std::abs(f[1] - f0[1] * std::polar(1.0, -2.0 * t)) < 1e-14);
  CHECK(std::abs(f[2]) < 1e-14);
  CHECK((sol.m * sol.m_inv - Eigen::Matrix3d::Identity()).norm() < 1e-14);
}

TEST_CASE("symmetric coupled chain eigenvalues") {
  const auto sol = solve_cubic(system_of(0.0, 0.0, 0.0, 1.0, 1.0));
  CHECK(sol.z[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(sol.z[1]) < 1e-14);
  CHECK(sol.z[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sol.method == SolveMethod::closed_form);
}

TEST_CASE("eigenvalues against the Jacobi oracle") {
  for (int n : {0, 5, 20, 60}) {
    for (double delta : {0.0, 5.0}) {
      const auto sys = build_manifold(xi(delta, delta), n);
      const auto z = cubic_eigenvalues(sys);
      const auto ref = oracle::jacobi_eigenvalues(sys.matrix());
      for (int j = 0; j < 3; ++j) CHECK(std::abs(z[j] - ref[j]) < 1e-10);
    }
  }
}

TEST_CASE("dressed rows are left eigenvectors with the stated normalization") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(-10.0, 10.0), v(0.1, 10.0);
  for (int i = 0; i < 300; ++i) {
    const auto sys = system_of(r(rng), r(rng), r(rng), v(rng), v(rng));
    const auto sol = solve_cubic(sys);
    const Eigen::Matrix3d h = sys.matrix();
    const double scale = h.cwiseAbs().maxCoeff();
    double trace = 0.0, prod = 1.0;
    for (int j = 0; j < 3; ++j) {
      const Eigen::RowVector3d row = sol.m.row(j);
      CHECK((row * h - sol.z[j] * row).norm() < 1e-10 * scale * row.norm());
      trace += sol.z[j];
      prod *= sol.z[j];
      if (sol.method == SolveMethod::closed_form) {
        CHECK(row(0) == 1.0);
        CHECK(row(1) == sol.x[j]);
        CHECK(row(2) == sol.y[j]);
      }
    }
    CHECK(trace == doctest::Approx(h.trace()).epsilon(1e-10).scale(scale));
    CHECK(prod == doctest::Approx(h.determinant()).epsilon(1e-10).scale(scale * scale * scale));
    CHECK((sol.m * sol.m_inv - Eigen::Matrix3d::Identity()).norm() < 1e-9);
  }
}

TEST_CASE("degenerate spectrum switches to the symmetric eigensolver") {
  // r1 = r3 with the middle state decoupled from one side gives a double root.
  const auto sol = solve_cubic(system_of(1.0, 0.0, 1.0, 0.0, 1e-12));
  CHECK(sol.method == SolveMethod::eigen_fallback);
  const auto exact = solve_cubic(system_of(2.0, 2.0, 2.0, 0.0, 0.0));
  CHECK(exact.method == SolveMethod::eigen_fallback);
  const Amplitudes3 f0{cplx{0.6, 0.0}, cplx{0.0, 0.8}, cplx{0.0, 0.0}};
  const auto f = propagate_manifold(exact, f0, 3.0);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(f[i] - f0[i] * std::polar(1.0, -6.0)) < 1e-14);
}

TEST_CASE("propagation at zero time returns the input") {
  const auto sol = solve_cubic(build_manifold(xi(1.0, 2.0), 4));
  const Amplitudes3 f0{cplx{0.1, 0.2}, cplx{0.3, -0.4}, cplx{-0.5, 0.0}};
  const auto f = propagate_manifold(sol, f0, 0.0);
  for (int i = 0; i < 3; ++i) CHECK(f[i] == f0[i]);
}

TEST_CASE("vacuum chain against adaptive RK4") {
  // |1, 0> starts the chain |1,0> - |2,1> - |3,2>.
  const double t = std::numbers::pi / std::sqrt(3.0);
  const auto sol = solve_cubic(build_manifold(xi(), 0));
  const auto f = propagate_manifold(sol, {cplx{1.0}, cplx{}, cplx{}}, t);

  auto s0 = JointState::zeros(2);
  s0.at(1, 0) = 1.0;
  oracle::AdaptiveRk4 rk(oracle::TruncatedHamiltonian::from(xi(), 2), oracle::to_vector(s0));
  const auto ref = rk.advance_to(t);
  CHECK(std::abs(f[0] - ref[0]) < 1e-8);
  CHECK(std::abs(f[1] - ref[3 + 1]) < 1e-8);
  CHECK(std::abs(f[2] - ref[6 + 2]) < 1e-8);
}

TEST_CASE("vacuum and coherent initial states") {
  const auto vac = initial_state(1, 0.0, 0.0, 10);
  CHECK(vac.a[0] == cplx{1.0});
  for (int n = 1; n <= 10; ++n) CHECK(vac.a[n] == cplx{});
  for (int n = 0; n <= 10; ++n) {
    CHECK(vac.b[n] == cplx{});
    CHECK(vac.c[n] == cplx{});
  }

  const auto coh = initial_state(2, 20.0, 0.0, 80);
  int peak = 0;
  for (int n = 0; n <= 80; ++n) {
    CHECK(std::norm(coh.b[n]) == doctest::Approx(oracle::poisson(20.0, n)).epsilon(1e-12).scale(1e-300));
    if (std::norm(coh.b[n]) > std::norm(coh.b[peak])) peak = n;
  }
  // Poisson(20) peaks at both 19 and 20; ties resolve to the first.
  CHECK((peak == 19 || peak == 20));
  CHECK(std::norm(coh.b[20]) == doctest::Approx(std::norm(coh.b[19])).epsilon(1e-12));
  CHECK(std::abs(coh.norm() - 1.0) < 1e-12);

  const auto alt = initial_state(1, 10.0, std::numbers::pi, default_cutoff(10.0));
  for (int n = 0; n <= alt.n_max; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(std::abs(alt.a[n] - sign * std::abs(alt.a[n])) < 1e-12 * std::abs(alt.a[n]) + 1e-300);
  }
}

TEST_CASE("insufficient cutoff reports the tail mass") {
  CHECK(default_cutoff(20.0) == 80);
  try {
    (void)initial_state(1, 20.0, 0.0, 30);
    FAIL("expected a truncation error");
  } catch (const TruncationError& e) {
    CHECK(e.tail_mass() > 0.05);
  }
  CHECK_THROWS_AS(initial_state(4, 1.0, 0.0, 30), std::domain_error);
  CHECK_THROWS_AS(initial_state(1, -1.0, 0.0, 30), std::domain_error);
}

TEST_CASE("evolution at zero time is bit-identical") {
  const auto s0 = initial_state(2, 20.0, 0.3, 80);
  const auto s = evolve(s0, xi(), 0.0);
  CHECK(s.a == s0.a);
  CHECK(s.b == s0.b);
  CHECK(s.c == s0.c);
}

TEST_CASE("full state against RK4 for the resonant reference setup") {
  const auto s0 = initial_state(2, 20.0, 0.0, default_cutoff(20.0));
  const Evolution ev(s0, xi());
  oracle::AdaptiveRk4 rk(oracle::TruncatedHamiltonian::from(xi(), s0.n_max), oracle::to_vector(s0));
  for (double t : {1.0, 5.0, 25.0}) {
    const auto& ref = rk.advance_to(t);
    CHECK(max_abs_diff(ev.at(t), ref) < 1e-7);
  }
}

TEST_CASE("V and lambda chains against RK4") {
  for (auto cfg_kind : {Configuration::v, Configuration::lambda}) {
    AtomConfig cfg = xi(0.7, -1.3, 1.4);
    cfg.configuration = cfg_kind;
    for (int level : {1, 2, 3}) {
      const auto s0 = initial_state(level, 4.0, 0.5, default_cutoff(4.0));
      oracle::AdaptiveRk4 rk(oracle::TruncatedHamiltonian::from(cfg, s0.n_max), oracle::to_vector(s0));
      CHECK(max_abs_diff(evolve(s0, cfg, 3.0), rk.advance_to(3.0)) < 1e-7);
    }
  }
}

TEST_CASE("unitarity over long times") {
  for (double nbar : {0.0, 1.0, 10.0, 20.0}) {
    const auto s0 = initial_state(2, nbar, 0.0, default_cutoff(nbar));
    const Evolution ev(s0, xi(0.5, 0.5));
    for (double t = 0.0; t <= 100.0; t += 2.5) CHECK(std::abs(ev.at(t).norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("zero coupling freezes populations") {
  AtomConfig cfg = xi(1.0, 2.0);
  cfg.coupling_scale = 0.0;
  const auto s0 = initial_state(1, 5.0, 0.0, default_cutoff(5.0));
  const auto s = evolve(s0, cfg, 13.0);
  for (int n = 0; n <= s.n_max; ++n) {
    CHECK(std::norm(s.a[n]) == doctest::Approx(std::norm(s0.a[n])).epsilon(1e-12));
    CHECK(std::norm(s.b[n]) == 0.0);
  }
}

TEST_CASE("time reversal") {
  const auto s0 = initial_state(2, 20.0, 0.4, 80);
  const auto cfg = xi(5.0, 5.0);
  const auto back = evolve(evolve(s0, cfg, 17.0), cfg, -17.0);
  CHECK(oracle::max_diff(oracle::to_vector(back), oracle::to_vector(s0)) < 1e-9);
}

TEST_CASE("chain reversal mirrors the dynamics") {
  for (int n : {0, 1, 3}) {
    const auto fwd = build_manifold(xi(1.5, -0.5, 2.0), n);
    const auto rev = system_of(fwd.r3, fwd.r2, fwd.r1, fwd.v2, fwd.v1);
    const Amplitudes3 f0{cplx{0.8, 0.0}, cplx{0.0, 0.6}, cplx{0.0, 0.0}};
    const Amplitudes3 r0{f0[2], f0[1], f0[0]};
    for (double t : {0.3, 1.1, 4.0}) {
      const auto a = propagate_manifold(solve_cubic(fwd), f0, t);
      const auto b = propagate_manifold(solve_cubic(rev), r0, t);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(a[i] - b[2 - i]) < 1e-12);
    }
  }
}

TEST_CASE("evolution is deterministic") {
  const auto s0 = initial_state(2, 20.0, 0.0, 80);
  const auto a = evolve(s0, xi(), 7.25);
  const auto b = evolve(s0, xi(), 7.25);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
  CHECK(a.c == b.c);
}
