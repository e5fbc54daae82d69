#pragma once

// Effective-medium description of the layered crystals bounding the cavity
// slab, the interface-polariton dispersion relation, and the
// frequency-dependent atom-field coupling factor.
//
// Units: lengths in angstrom, energies in meV, angular frequencies in rad/s
// where a physical frequency is needed, otherwise ratios to omega_T.

#include <optional>
#include <variant>
#include <vector>

namespace pbgqed {

inline constexpr double kSpeedOfLight = 2.99792458e18;   // angstrom / s
inline constexpr double kHbarMeVSeconds = 6.582119569e-13;  // meV * s

/// Angular frequency (rad/s) of a photon with the given energy in meV.
constexpr double angular_frequency(double energy_mev) { return energy_mev / kHbarMeVSeconds; }

/// One period of a two-layer stack.
struct LayerPair {
  double eta_a;  // relative permittivity of layer a
  double d_a;    // thickness of layer a (angstrom)
  double eta_b;
  double d_b;
};

/// Uniaxial permittivity with the optical axis along z.
struct UniaxialTensor {
  double eps_par;
  double eps_z;
};

struct SlabGeometry {
  double slab_width;  // cavity extent r along z (angstrom)
  double eps_slab;    // slab permittivity at the working frequency
};

/// Throws std::domain_error for non-positive thicknesses or permittivities.
UniaxialTensor effective_permittivity(const LayerPair& layers);

/// How the slab permittivity entering the local-field factor depends on
/// frequency.
struct SlabPermittivityModel {
  enum class Kind { constant, single_resonance };
  Kind kind = Kind::constant;
  double eps_static = 10.89;  // value used by the constant model
  double eps_inf = 10.89;     // high-frequency limit of the resonance model

  /// Permittivity at omega/omega_T given omega_L/omega_T. The resonance
  /// model is eps_inf (w^2 - wL^2) / (w^2 - 1) and diverges at w = 1.
  double at(double omega_ratio, double omega_l_ratio) const;
};

/// Parameters of the dimensionless coupling factor. The local-field factor
/// Y and the pole position eta follow from eps_s.
class CouplingModel {
 public:
  CouplingModel(double omega_ratio, double omega_l_ratio, double eps_s);

  double omega_ratio() const { return omega_ratio_; }
  double omega_l_ratio() const { return omega_l_ratio_; }
  double eps_s() const { return eps_s_; }

  /// eta^2 = (2 eps_s (wL/wT)^2 + 1) / (2 eps_s + 1)
  double pole_squared() const { return pole_squared_; }
  /// eta; NaN when eta^2 < 0.
  double pole() const;
  /// Y = 3 eps_s / (2 eps_s + 1)
  double local_field() const { return local_field_; }

 private:
  double omega_ratio_;
  double omega_l_ratio_;
  double eps_s_;
  double pole_squared_;
  double local_field_;
};

/// Distance in (omega/omega_T)^2 below which coupling_lambda reports a pole.
inline constexpr double kPoleTolerance = 1e-9;

/// lambda = Y ((w/wT)^2 - (wL/wT)^2) / ((w/wT)^2 - eta^2). Returns nullopt at
/// the pole w/wT = eta (and where 2 eps_s + 1 vanishes).
std::optional<double> coupling_lambda(const CouplingModel& model);

/// Regions whose transverse wavenumber came out imaginary.
struct NotEvanescent {
  bool slab = false;
  bool crystal1 = false;
  bool crystal2 = false;
};

/// Real decay constants normal to the interfaces (1/angstrom).
struct Wavenumbers {
  double ks;
  double k1;
  double k2;
};

/// ks^2 = k^2 - w^2 eps_s / c^2 and ki^2 = eps_i_par k^2 / eps_zi - w^2 eps_i_par / c^2.
/// Only the evanescent branch is bound; otherwise reports which regions
/// propagate.
std::variant<Wavenumbers, NotEvanescent> transverse_wavenumbers(double k_par, double omega,
                                                                 const SlabGeometry& slab,
                                                                 const UniaxialTensor& crystal1,
                                                                 const UniaxialTensor& crystal2);

/// The arctanh argument left the open interval (-1, 1).
struct OutOfBranch {
  double argument;
};

/// Which denominator to use inside the arctanh. `as_printed` pairs ks/eps_s
/// linearly with k1 k2 / (eps1 eps2); `corrected` squares the slab term,
/// which is the form that reduces to the single-interface condition
/// ks/eps_s = -k/eps_par for a thick slab between identical crystals.
enum class DispersionForm { as_printed, corrected };

using ResidualResult = std::variant<double, NotEvanescent, OutOfBranch>;

/// f(k, w) = ks r - arctanh(x); zero on an interface-polariton branch.
ResidualResult dispersion_residual(double k_par, double omega, const SlabGeometry& slab,
                                   const UniaxialTensor& crystal1,
                                   const UniaxialTensor& crystal2,
                                   DispersionForm form = DispersionForm::as_printed);

/// The arctanh argument x alone, for diagnostics. NaN off the evanescent
/// branch.
double dispersion_argument(double k_par, double omega, const SlabGeometry& slab,
                           const UniaxialTensor& crystal1, const UniaxialTensor& crystal2,
                           DispersionForm form = DispersionForm::as_printed);

struct KBracket {
  double lo;
  double hi;
  int scan_points = 2000;  // uniform samples used to locate sign changes
};

inline constexpr double kDispersionTolerance = 1e-10;
inline constexpr int kBisectionIterations = 200;

/// All roots of the residual inside the bracket, ascending. A sign change is
/// only accepted between two adjacent in-branch samples; out-of-branch and
/// propagating samples break the chain. Each root is bisected until the
/// residual drops below kDispersionTolerance, the iteration cap is reached,
/// or the interval collapses to adjacent doubles.
/// Throws std::domain_error for an invalid bracket.
std::vector<double> solve_dispersion(double omega, const SlabGeometry& slab,
                                     const UniaxialTensor& crystal1,
                                     const UniaxialTensor& crystal2, const KBracket& search,
                                     DispersionForm form = DispersionForm::as_printed);

}  // namespace pbgqed
