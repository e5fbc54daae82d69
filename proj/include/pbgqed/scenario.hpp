#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pbgqed/config.hpp"
#include "pbgqed/phase_entropy.hpp"

namespace pbgqed {

struct ObservableRow {
  double axis = 0.0;
  bool pole = false;  // sweep point sits on the coupling pole; values unset
  double concurrence = 0.0;
  double r_n = 0.0;
  double r_psi = 0.0;
  double entropy_sum = 0.0;
  std::array<double, 3> populations{};  // rho_11, rho_22, rho_33
  double norm = 1.0;
};

struct PhaseDump {
  std::size_t row = 0;
  double axis = 0.0;
  PhaseGrid grid;
};

struct ScenarioResult {
  std::vector<ObservableRow> rows;
  std::vector<PhaseDump> phase_grids;
};

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kTruncationLeakTolerance = 1e-8;

/// Coupling at mode frequency omega relative to the reference frequency,
/// times the configured coupling scale. nullopt on the pole.
std::optional<double> relative_coupling(const MediumBlock& medium, double omega_ratio);

/// Frequencies in [lo, hi] where omega^2 - eta(omega)^2 changes sign
/// through zero, i.e. the poles of the coupling factor.
std::vector<double> coupling_poles(const MediumBlock& medium, double lo, double hi);

/// Observables of one state. Throws NumericalError if the state breaks
/// the norm, truncation, concurrence or entropy bounds.
ObservableRow observe(const JointState& state, double axis, const OutputBlock& output,
                      int grid_size, PhaseGrid* phase_out = nullptr);

/// Runs every sweep point in axis order. Mode-frequency points whose grid
/// cell contains a coupling pole are emitted as pole rows.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// "axis,concurrence,r_n,r_psi,entropy_sum,p1,p2,p3"
inline constexpr const char* kCsvHeader = "axis,concurrence,r_n,r_psi,entropy_sum,p1,p2,p3";

/// 12 significant digits, locale independent.
std::string format_number(double value);

std::string format_csv(const std::vector<ObservableRow>& rows, const OutputBlock& output = {});
std::string format_phase_grid(const PhaseGrid& grid);

/// Throws IoError when the file cannot be written, std::invalid_argument
/// for an empty row set.
void emit_csv(const std::vector<ObservableRow>& rows, const std::string& path,
              const OutputBlock& output = {});
void emit_phase_grid(const PhaseGrid& grid, const std::string& path);

/// Minimal SVG line chart of one column against the axis. Pole rows break
/// the line. `column` is one of the CSV column names after `axis`.
std::string format_svg(const std::vector<ObservableRow>& rows, const std::string& column,
                       const std::string& axis_label);
void emit_svg(const std::vector<ObservableRow>& rows, const std::string& column,
              const std::string& axis_label, const std::string& path);

/// Writes `<dir>/<name>.csv`, phase grids as `<dir>/<name>_phase_<row>.csv`
/// and, when `svg`, one chart per selected observable. Returns the written
/// paths in order.
std::vector<std::string> write_outputs(const ScenarioConfig& config, const ScenarioResult& result,
                                       bool svg);

}  // namespace pbgqed
