#pragma once

// Scenario configuration: a flat `key = value` text format grouped under
// `[section]` headers. Comments start with '#'. Every key must be known;
// typos are errors, not silently ignored.
//
//   [medium]  eps_0, eps_model (constant|resonance), eps_inf, hbar_omega_L,
//             hbar_omega_T, omega_ratio, reference_omega_ratio, omega0_ratio,
//             eta, eps_1..eps_4, d_1..d_4, slab_width, coupling_scale,
//             dispersion_form (as_printed|corrected)
//   [atom]    configuration (xi|v|lambda), delta, delta1, delta2,
//             coupling_ratio, atom_start
//   [field]   nbar, beta_phase, n_max (integer or auto)
//   [sweep]   axis (time|mode_frequency|nbar), low, high, steps, time
//   [output]  name, directory, observables, phase_grids, phase_stride,
//             grid_size (integer or auto)
//
// Numbers accept multiples of pi: `pi`, `pi/2`, `3pi/2`, `1.5*pi`.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbgqed/dressed.hpp"
#include "pbgqed/medium.hpp"

namespace pbgqed {

struct MediumBlock {
  double eps_0 = 10.89;
  SlabPermittivityModel::Kind eps_model = SlabPermittivityModel::Kind::constant;
  double eps_inf = 10.89;
  double hbar_omega_l = 36.29;  // meV
  double hbar_omega_t = 33.25;  // meV
  double omega_ratio = 2.0;     // mode frequency omega / omega_T
  double reference_omega_ratio = 2.0;
  double omega0_ratio = 1.0;    // recorded; does not enter the scaled dynamics
  double eta_quoted = 1.085;   // quoted band-edge location, annotation only
  LayerPair crystal1{9.0, 500.0, 1.3, 300.0};
  LayerPair crystal2{10.0, 500.0, 1.5, 400.0};
  double slab_width = 1200.0;  // angstrom
  double coupling_scale = 1.0;
  DispersionForm dispersion_form = DispersionForm::as_printed;

  double omega_l_ratio() const { return hbar_omega_l / hbar_omega_t; }
  SlabPermittivityModel permittivity_model() const;
  CouplingModel coupling_model(double omega_ratio) const;
};

struct AtomBlock {
  Configuration configuration = Configuration::xi;
  double delta = 0.0;
  std::optional<double> delta1;
  std::optional<double> delta2;
  double coupling_ratio = 1.0;
  int atom_start = 2;  // middle level of the chain
};

struct FieldBlock {
  double nbar = 20.0;
  double beta_phase = 0.0;
  std::optional<int> n_max;  // nullopt: default_cutoff(nbar)
};

enum class SweepAxis { time, mode_frequency, nbar };

struct SweepBlock {
  SweepAxis axis = SweepAxis::time;
  double low = 0.0;
  double high = 1.0;
  int steps = 1;       // intervals; steps + 1 sample points
  double time = 0.0;   // scaled time for the mode_frequency and nbar axes

  std::vector<double> points() const;
  double spacing() const { return (high - low) / steps; }
};

struct OutputBlock {
  std::string name = "scenario";
  std::string directory = ".";
  bool concurrence = true;
  bool entropies = true;
  bool populations = true;
  bool phase_grids = false;
  int phase_stride = 1;
  std::optional<int> grid_size;  // nullopt: default_grid_size(n_max)
};

struct ScenarioConfig {
  MediumBlock medium;
  AtomBlock atom;
  FieldBlock field;
  SweepBlock sweep;
  OutputBlock output;

  /// Atom configuration at unit coupling scale, detunings resolved.
  AtomConfig atom_config() const;
};

/// Parse and validate config text. `overrides` are `section.key=value`
/// strings applied on top of the text (they may also introduce keys the
/// text omits). Throws ConfigError.
ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {},
                            const std::string& source = "<config>");

/// Read a config file; throws IoError if it cannot be opened.
ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Number with optional pi multiple. Throws ConfigError naming `key`.
double parse_number(std::string_view value, const std::string& key = {});

/// Bundled presets (fig3a ... fig10).
std::vector<std::string> preset_names();
/// Raw text of a bundled preset; throws ConfigError for unknown names.
const std::string& preset_text(const std::string& name);

}  // namespace pbgqed
