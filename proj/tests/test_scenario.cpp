#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "figures.hpp"
#include "pbgqed/entanglement.hpp"
#include "pbgqed/error.hpp"
#include "pbgqed/scenario.hpp"

using namespace pbgqed;
namespace fs = std::filesystem;

namespace {

ScenarioConfig preset(const std::string& name, const std::vector<std::string>& overrides = {}) {
  return parse_config(preset_text(name), overrides, name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pbgqed_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("coupling relative to the reference frequency") {
  const MediumBlock m;
  CHECK(*relative_coupling(m, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*relative_coupling(m, 1.5) < 1.0);
  MediumBlock doubled;
  doubled.coupling_scale = 2.0;
  CHECK(*relative_coupling(doubled, 2.0) == doctest::Approx(2.0));

  const auto poles = coupling_poles(m, 1.0, 2.0);
  REQUIRE(poles.size() == 1);
  CHECK(poles[0] == doctest::Approx(1.08757633403167).epsilon(1e-10));
  CHECK_FALSE(relative_coupling(m, poles[0]).has_value());
  CHECK(coupling_poles(m, 1.2, 2.0).empty());
}

TEST_CASE("resonance model poles stay inside the band") {
  MediumBlock m;
  m.eps_model = SlabPermittivityModel::Kind::single_resonance;
  for (double w : coupling_poles(m, 1.0001, 2.0)) {
    CHECK(std::abs(w * w - m.coupling_model(w).pole_squared()) < 1e-6);
  }
}

TEST_CASE("reference run: bounds, first maximum and collapse-revival") {
  const auto cfg = preset("fig3a");
  const auto res = run_scenario(cfg);
  REQUIRE(res.rows.size() == 1001);
  for (const auto& r : res.rows) {
    CHECK(std::abs(r.norm - 1.0) < 1e-10);
    CHECK(r.concurrence >= 0.0);
    CHECK(r.concurrence <= kQutritConcurrenceBound + 1e-10);
    CHECK(r.entropy_sum >= std::log(2.0 * std::numbers::pi) - 1e-6);
    CHECK(r.populations[0] + r.populations[1] + r.populations[2] == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(res.rows[0].concurrence < 1e-6);
  CHECK(res.rows[0].populations[1] == doctest::Approx(1.0));

  const auto c = figures::concurrences(res.rows);
  const auto first = figures::first_local_max(c);
  REQUIRE(first.has_value());
  CHECK(c[*first] >= 0.90);
  CHECK(c[*first] <= 1.16);

  std::vector<double> axis;
  for (const auto& r : res.rows) axis.push_back(r.axis);
  const auto cr = figures::collapse_and_revival(axis, c, c[*first]);
  CHECK(cr.found);
  CHECK(cr.revival_time >= cr.collapse_end);
  MESSAGE("collapse [" << cr.collapse_start << ", " << cr.collapse_end << "], revival from " << cr.revival_time);
}

TEST_CASE("detuning lowers the first maximum") {
  const auto a = figures::concurrences(run_scenario(preset("fig3a")).rows);
  const auto b = figures::concurrences(run_scenario(preset("fig3b")).rows);
  const auto ia = figures::first_local_max(a), ib = figures::first_local_max(b);
  REQUIRE(ia.has_value());
  REQUIRE(ib.has_value());
  CHECK(b[*ib] < a[*ia]);
}

TEST_CASE("mode-frequency sweep marks the pole") {
  const auto cfg = preset("fig4a");
  const auto res = run_scenario(cfg);
  const auto points = cfg.sweep.points();
  REQUIRE(res.rows.size() == points.size());
  std::size_t nearest = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::abs(points[i] - 1.085) < std::abs(points[nearest] - 1.085)) nearest = i;
  }
  int poles = 0;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    if (res.rows[i].pole) {
      ++poles;
      CHECK(i == nearest);
    }
  }
  CHECK(poles == 1);
  const auto csv = format_csv(res.rows);
  CHECK(csv.find(format_number(points[nearest]) + ",pole,pole,pole,pole,pole,pole,pole\n") !=
        std::string::npos);
}

TEST_CASE("nbar sweep") {
  const auto cfg = parse_config(
      "[sweep]\naxis = nbar\nlow = 0\nhigh = 4\nsteps = 4\ntime = 2\n[atom]\natom_start = 1\n");
  const auto res = run_scenario(cfg);
  REQUIRE(res.rows.size() == 5);
  // Vacuum Rabi oscillation of a ladder chain started at |1, 0>.
  CHECK(res.rows[0].axis == 0.0);
  CHECK(res.rows[1].axis == 1.0);
  for (const auto& r : res.rows) CHECK(std::abs(r.norm - 1.0) < 1e-10);
}

TEST_CASE("observe enforces the invariants") {
  auto s = initial_state(2, 3.0, 0.0, default_cutoff(3.0));
  const OutputBlock out;
  CHECK_NOTHROW(observe(s, 0.0, out, default_grid_size(s.n_max)));
  s.b[0] *= 1.01;
  CHECK_THROWS_AS(observe(s, 0.0, out, default_grid_size(s.n_max)), NumericalError);

  auto leak = JointState::zeros(10);
  leak.at(2, 9) = 1.0;
  CHECK_THROWS_AS(observe(leak, 0.0, out, 1024), NumericalError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(50.0) == "50");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("csv layout") {
  ObservableRow r;
  r.axis = 0.5;
  r.concurrence = 0.25;
  r.populations = {1.0, 0.0, 0.0};
  const auto one = format_csv({r});
  CHECK(one == std::string(kCsvHeader) + "\n0.5,0.25,0,0,0,1,0,0\n");

  OutputBlock only_c;
  only_c.entropies = only_c.populations = false;
  CHECK(format_csv({r}, only_c) == std::string(kCsvHeader) + "\n0.5,0.25,nan,nan,nan,nan,nan,nan\n");

  ObservableRow p;
  p.axis = 1.085;
  p.pole = true;
  CHECK(format_csv({p}) == std::string(kCsvHeader) + "\n1.085,pole,pole,pole,pole,pole,pole,pole\n");
}

TEST_CASE("emitting files") {
  const auto dir = scratch("emit");
  ObservableRow r;
  emit_csv({r}, (dir / "one.csv").string());
  CHECK(slurp(dir / "one.csv") == format_csv({r}));
  CHECK_THROWS_AS(emit_csv({}, (dir / "empty.csv").string()), std::invalid_argument);
  CHECK_THROWS_AS(emit_csv({r}, (dir / "missing" / "x.csv").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("re-running a scenario is byte identical") {
  const auto cfg = preset("fig5a", {"sweep.high=5", "sweep.steps=50", "output.phase_stride=5"});
  const auto d1 = scratch("det1"), d2 = scratch("det2");
  auto c1 = cfg, c2 = cfg;
  c1.output.directory = d1.string();
  c2.output.directory = d2.string();
  const auto f1 = write_outputs(c1, run_scenario(c1), true);
  const auto f2 = write_outputs(c2, run_scenario(c2), true);
  REQUIRE(f1.size() == f2.size());
  CHECK(f1.size() == 1 + 11 + 7);
  for (std::size_t i = 0; i < f1.size(); ++i) {
    CHECK(fs::path(f1[i]).filename() == fs::path(f2[i]).filename());
    CHECK(slurp(f1[i]) == slurp(f2[i]));
  }
  CHECK(slurp(d1 / "fig5a.csv").rfind(kCsvHeader, 0) == 0);
  CHECK(fs::exists(d1 / "fig5a_phase_00000.csv"));
  CHECK(fs::exists(d1 / "fig5a_concurrence.svg"));
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("svg chart breaks at pole rows") {
  std::vector<ObservableRow> rows(3);
  rows[0].axis = 1.0;
  rows[1].axis = 1.5;
  rows[1].pole = true;
  rows[2].axis = 2.0;
  const auto svg = format_svg(rows, "concurrence", "omega");
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t lines = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++lines;
  CHECK(lines == 2);
  CHECK_THROWS_AS(format_svg(rows, "bogus", "omega"), std::invalid_argument);
}
