#include "pbgqed/medium.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pbgqed {

UniaxialTensor effective_permittivity(const LayerPair& layers) {
  if (!(layers.d_a > 0.0) || !(layers.d_b > 0.0)) {
    throw std::domain_error("effective_permittivity: layer thicknesses must be positive");
  }
  if (!(layers.eta_a > 0.0) || !(layers.eta_b > 0.0)) {
    throw std::domain_error("effective_permittivity: layer permittivities must be positive");
  }
  const double period = layers.d_a + layers.d_b;
  const double eps_par = (layers.eta_a * layers.d_a + layers.eta_b * layers.d_b) / period;
  const double eps_z =
      layers.eta_a * layers.eta_b * period / (layers.eta_a * layers.d_b + layers.eta_b * layers.d_a);
  return {eps_par, eps_z};
}

double SlabPermittivityModel::at(double omega_ratio, double omega_l_ratio) const {
  if (kind == Kind::constant) return eps_static;
  const double w2 = omega_ratio * omega_ratio;
  return eps_inf * (w2 - omega_l_ratio * omega_l_ratio) / (w2 - 1.0);
}

CouplingModel::CouplingModel(double omega_ratio, double omega_l_ratio, double eps_s)
    : omega_ratio_(omega_ratio), omega_l_ratio_(omega_l_ratio), eps_s_(eps_s) {
  const double denom = 2.0 * eps_s + 1.0;
  pole_squared_ = (2.0 * eps_s * omega_l_ratio * omega_l_ratio + 1.0) / denom;
  local_field_ = 3.0 * eps_s / denom;
}

double CouplingModel::pole() const {
  return pole_squared_ >= 0.0 ? std::sqrt(pole_squared_) : std::numeric_limits<double>::quiet_NaN();
}

std::optional<double> coupling_lambda(const CouplingModel& model) {
  if (std::abs(2.0 * model.eps_s() + 1.0) < kPoleTolerance) return std::nullopt;
  const double w2 = model.omega_ratio() * model.omega_ratio();
  const double denom = w2 - model.pole_squared();
  if (std::abs(denom) < kPoleTolerance) return std::nullopt;
  const double wl2 = model.omega_l_ratio() * model.omega_l_ratio();
  return model.local_field() * (w2 - wl2) / denom;
}

std::variant<Wavenumbers, NotEvanescent> transverse_wavenumbers(double k_par, double omega,
                                                                 const SlabGeometry& slab,
                                                                 const UniaxialTensor& crystal1,
                                                                 const UniaxialTensor& crystal2) {
  const double k2 = k_par * k_par;
  const double w2c2 = (omega / kSpeedOfLight) * (omega / kSpeedOfLight);
  const double ks2 = k2 - w2c2 * slab.eps_slab;
  auto crystal_square = [&](const UniaxialTensor& c) {
    return c.eps_par * k2 / c.eps_z - w2c2 * c.eps_par;
  };
  const double k1_2 = crystal_square(crystal1);
  const double k2_2 = crystal_square(crystal2);

  // At k = w = 0 nothing decays; treat that as propagating too.
  NotEvanescent bad{ks2 < 0.0 || (ks2 == 0.0 && k_par == 0.0), k1_2 < 0.0, k2_2 < 0.0};
  if (bad.slab || bad.crystal1 || bad.crystal2) return bad;
  return Wavenumbers{std::sqrt(ks2), std::sqrt(k1_2), std::sqrt(k2_2)};
}

namespace {

struct ArctanhPieces {
  double argument;
  double value;  // arctanh(argument), NaN outside (-1, 1)
};

ArctanhPieces arctanh_pieces(const Wavenumbers& k, const SlabGeometry& slab,
                             const UniaxialTensor& c1, const UniaxialTensor& c2,
                             DispersionForm form) {
  const double a = k.ks / slab.eps_slab;
  const double b1 = k.k1 / c1.eps_par;
  const double b2 = k.k2 / c2.eps_par;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (form == DispersionForm::as_printed) {
    const double x = -a * (b1 + b2) / (a + b1 * b2);
    const double value = (std::abs(x) < 1.0) ? std::atanh(x) : nan;
    return {x, value};
  }
  // (1 + x) / (1 - x) factors as (a - b1)(a - b2) / ((a + b1)(a + b2)), which
  // keeps the logarithm accurate when x is within rounding of 1.
  const double denom = a * a + b1 * b2;
  const double x = -a * (b1 + b2) / denom;
  const double plus = (a - b1) * (a - b2) / denom;   // 1 + x
  const double minus = (a + b1) * (a + b2) / denom;  // 1 - x
  if (!(plus > 0.0) || !(minus > 0.0)) return {x, nan};
  return {x, 0.5 * std::log(plus / minus)};
}

}  // namespace

ResidualResult dispersion_residual(double k_par, double omega, const SlabGeometry& slab,
                                   const UniaxialTensor& crystal1,
                                   const UniaxialTensor& crystal2, DispersionForm form) {
  const auto waves = transverse_wavenumbers(k_par, omega, slab, crystal1, crystal2);
  if (const auto* bad = std::get_if<NotEvanescent>(&waves)) return *bad;
  const auto& k = std::get<Wavenumbers>(waves);
  const auto pieces = arctanh_pieces(k, slab, crystal1, crystal2, form);
  if (std::isnan(pieces.value)) return OutOfBranch{pieces.argument};
  return k.ks * slab.slab_width - pieces.value;
}

double dispersion_argument(double k_par, double omega, const SlabGeometry& slab,
                           const UniaxialTensor& crystal1, const UniaxialTensor& crystal2,
                           DispersionForm form) {
  const auto waves = transverse_wavenumbers(k_par, omega, slab, crystal1, crystal2);
  if (std::holds_alternative<NotEvanescent>(waves)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return arctanh_pieces(std::get<Wavenumbers>(waves), slab, crystal1, crystal2, form).argument;
}

std::vector<double> solve_dispersion(double omega, const SlabGeometry& slab,
                                     const UniaxialTensor& crystal1,
                                     const UniaxialTensor& crystal2, const KBracket& search,
                                     DispersionForm form) {
  if (!(search.lo >= 0.0) || !(search.hi > search.lo) || !std::isfinite(search.hi) ||
      search.scan_points < 2) {
    throw std::domain_error("solve_dispersion: bracket must satisfy 0 <= lo < hi with >= 2 scan points");
  }
  auto residual = [&](double k) -> std::optional<double> {
    const auto r = dispersion_residual(k, omega, slab, crystal1, crystal2, form);
    if (const auto* v = std::get_if<double>(&r)) return *v;
    return std::nullopt;
  };

  std::vector<double> roots;
  const int n = search.scan_points;
  const double step = (search.hi - search.lo) / (n - 1);
  double k_prev = search.lo;
  auto f_prev = residual(k_prev);
  for (int i = 1; i < n; ++i) {
    const double k_next = (i == n - 1) ? search.hi : search.lo + step * i;
    const auto f_next = residual(k_next);
    if (f_prev && *f_prev == 0.0) {
      roots.push_back(k_prev);
    } else if (f_prev && f_next && ((*f_prev < 0.0) != (*f_next < 0.0)) && *f_next != 0.0) {
      double lo = k_prev;
      double hi = k_next;
      double f_lo = *f_prev;
      double mid = 0.5 * (lo + hi);
      for (int it = 0; it < kBisectionIterations; ++it) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const auto f_mid = residual(mid);
        // Sign changes inside an in-branch cell stay in branch for any
        // continuous branch; a gap here means the cell straddles a boundary.
        if (!f_mid) break;
        if (std::abs(*f_mid) < kDispersionTolerance) break;
        if ((*f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = *f_mid;
        } else {
          hi = mid;
        }
      }
      if (residual(mid)) roots.push_back(mid);
    }
    k_prev = k_next;
    f_prev = f_next;
  }
  if (f_prev && *f_prev == 0.0) roots.push_back(k_prev);
  return roots;
}

}  // namespace pbgqed
