// simulate: run a scenario config (or a bundled preset) and write CSV data.
//
//   simulate <config-path> [--out DIR] [--set section.key=value ...] [--svg]
//   simulate --preset fig3a [--out DIR] ...
//
// Exit codes: 0 success, 2 config error, 3 numerical-consistency error,
// 4 I/O error.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pbgqed/config.hpp"
#include "pbgqed/error.hpp"
#include "pbgqed/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-level atom in a photonic-crystal cavity: entanglement and phase entropy"};
  std::string config_path;
  std::string out_dir;
  std::string preset;
  std::vector<std::string> overrides;
  bool svg = false;
  bool list_presets = false;

  app.add_option("config", config_path, "Scenario config file");
  app.add_option("--out", out_dir, "Output directory (overrides output.directory)");
  app.add_option("--set", overrides, "Override a config key, section.key=value")
      ->allow_extra_args(false);
  app.add_flag("--svg", svg, "Also write an SVG line chart per observable");
  app.add_option("--preset", preset, "Run a bundled preset instead of a config file")
      ->check(CLI::IsMember(pbgqed::preset_names()));
  app.add_flag("--list-presets", list_presets, "Print the bundled preset names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  if (list_presets) {
    for (const auto& name : pbgqed::preset_names()) std::cout << name << '\n';
    return 0;
  }

  try {
    if (config_path.empty() == preset.empty()) {
      throw pbgqed::ConfigError("give exactly one of <config-path> or --preset");
    }
    if (!out_dir.empty()) overrides.push_back("output.directory=" + out_dir);
    const pbgqed::ScenarioConfig config =
        preset.empty() ? pbgqed::load_config(config_path, overrides)
                       : pbgqed::parse_config(pbgqed::preset_text(preset), overrides,
                                              "preset " + preset);
    const auto result = pbgqed::run_scenario(config);
    const auto written = pbgqed::write_outputs(config, result, svg);

    std::size_t poles = 0;
    for (const auto& row : result.rows) poles += row.pole ? 1 : 0;
    std::cout << config.output.name << ": " << result.rows.size() << " rows";
    if (poles > 0) std::cout << " (" << poles << " pole)";
    std::cout << ", " << written.size() << " files\n";
    for (const auto& path : written) std::cout << "  " << path << '\n';
    return 0;
  } catch (const pbgqed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pbgqed::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const pbgqed::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
}
