#include "pbgqed/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pbgqed/error.hpp"

namespace pbgqed {

namespace {

std::string trim(std::string_view s) {
  auto begin = s.begin();
  auto end = s.end();
  while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
  while (end != begin && std::isspace(static_cast<unsigned char>(*(end - 1)))) --end;
  return std::string(begin, end);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

std::optional<double> plain_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct Entry {
  std::string value;
  int line = 0;  // 0 for command-line overrides
};

using EntryMap = std::map<std::string, Entry>;

EntryMap parse_entries(std::string_view text, const std::string& source) {
  EntryMap entries;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": malformed section header",
                          {}, line_no);
      }
      section = lower(trim(std::string_view(line).substr(1, line.size() - 2)));
      if (section.empty()) {
        throw ConfigError(source + ":" + std::to_string(line_no) + ": empty section name", {},
                          line_no);
      }
      entries.emplace(section + ".", Entry{"", line_no});  // marks the section as present
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected `key = value`", {},
                        line_no);
    }
    if (section.empty()) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": key outside of a [section]",
                        {}, line_no);
    }
    const std::string key = section + "." + lower(trim(std::string_view(line).substr(0, eq)));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key `" + key + "`",
                        key, line_no);
    }
  }
  return entries;
}

void apply_override(EntryMap& entries, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const std::string key = eq == std::string::npos ? "" : lower(trim(assignment.substr(0, eq)));
  const auto dot = key.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
    throw ConfigError("override `" + assignment + "` must have the form section.key=value", key);
  }
  entries[key.substr(0, dot + 1)] = Entry{"", 0};
  entries[key] = Entry{trim(assignment.substr(eq + 1)), 0};
}

bool parse_bool(const std::string& value, const std::string& key) {
  const std::string v = lower(value);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError("`" + key + "`: expected a boolean, got `" + value + "`", key);
}

int parse_int(const std::string& value, const std::string& key) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("`" + key + "`: expected an integer, got `" + value + "`", key);
  }
  return out;
}

std::optional<int> parse_auto_int(const std::string& value, const std::string& key) {
  if (lower(value) == "auto") return std::nullopt;
  return parse_int(value, key);
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError("`" + key + "`: " + message, key);
}

}  // namespace

double parse_number(std::string_view value, const std::string& key) {
  const std::string s = lower(trim(value));
  auto fail = [&]() -> double {
    throw ConfigError("`" + key + "`: expected a number, got `" + std::string(value) + "`", key);
  };
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    const auto v = plain_number(s);
    return v ? *v : fail();
  }
  std::string coef = s.substr(0, pi_pos);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty() && coef != "+") {
    const auto v = plain_number(coef);
    if (!v) return fail();
    factor = *v;
  }
  const std::string rest = s.substr(pi_pos + 2);
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') return fail();
    const auto v = plain_number(rest.substr(1));
    if (!v || *v == 0.0) return fail();
    divisor = *v;
  }
  return factor * std::numbers::pi / divisor;
}

SlabPermittivityModel MediumBlock::permittivity_model() const {
  SlabPermittivityModel m;
  m.kind = eps_model;
  m.eps_static = eps_0;
  m.eps_inf = eps_inf;
  return m;
}

CouplingModel MediumBlock::coupling_model(double omega) const {
  return CouplingModel(omega, omega_l_ratio(), permittivity_model().at(omega, omega_l_ratio()));
}

std::vector<double> SweepBlock::points() const {
  std::vector<double> out(steps + 1);
  for (int i = 0; i <= steps; ++i) out[i] = (i == steps) ? high : low + spacing() * i;
  return out;
}

AtomConfig ScenarioConfig::atom_config() const {
  AtomConfig c;
  c.configuration = atom.configuration;
  c.delta1 = atom.delta1.value_or(atom.delta);
  c.delta2 = atom.delta2.value_or(atom.delta);
  c.coupling_ratio = atom.coupling_ratio;
  c.coupling_scale = 1.0;
  return c;
}

ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides,
                            const std::string& source) {
  EntryMap entries = parse_entries(text, source);
  for (const auto& o : overrides) apply_override(entries, o);

  ScenarioConfig cfg;
  auto& md = cfg.medium;
  auto& at = cfg.atom;
  auto& fd = cfg.field;
  auto& sw = cfg.sweep;
  auto& out = cfg.output;

  using Handler = std::function<void(const std::string&, const std::string&)>;
  auto number = [](double& target) -> Handler {
    return [&target](const std::string& v, const std::string& k) { target = parse_number(v, k); };
  };
  const std::map<std::string, Handler> handlers = {
      {"medium.eps_0", number(md.eps_0)},
      {"medium.eps_model",
       [&](const std::string& v, const std::string& k) {
         const auto s = lower(v);
         if (s == "constant") {
           md.eps_model = SlabPermittivityModel::Kind::constant;
         } else if (s == "resonance") {
           md.eps_model = SlabPermittivityModel::Kind::single_resonance;
         } else {
           throw ConfigError("`" + k + "`: expected constant or resonance", k);
         }
       }},
      {"medium.eps_inf", number(md.eps_inf)},
      {"medium.hbar_omega_l", number(md.hbar_omega_l)},
      {"medium.hbar_omega_t", number(md.hbar_omega_t)},
      {"medium.omega_ratio", number(md.omega_ratio)},
      {"medium.reference_omega_ratio", number(md.reference_omega_ratio)},
      {"medium.omega0_ratio", number(md.omega0_ratio)},
      {"medium.eta", number(md.eta_quoted)},
      {"medium.eps_1", number(md.crystal1.eta_a)},
      {"medium.d_1", number(md.crystal1.d_a)},
      {"medium.eps_2", number(md.crystal1.eta_b)},
      {"medium.d_2", number(md.crystal1.d_b)},
      {"medium.eps_3", number(md.crystal2.eta_a)},
      {"medium.d_3", number(md.crystal2.d_a)},
      {"medium.eps_4", number(md.crystal2.eta_b)},
      {"medium.d_4", number(md.crystal2.d_b)},
      {"medium.slab_width", number(md.slab_width)},
      {"medium.coupling_scale", number(md.coupling_scale)},
      {"medium.dispersion_form",
       [&](const std::string& v, const std::string& k) {
         const auto s = lower(v);
         if (s == "as_printed") {
           md.dispersion_form = DispersionForm::as_printed;
         } else if (s == "corrected") {
           md.dispersion_form = DispersionForm::corrected;
         } else {
           throw ConfigError("`" + k + "`: expected as_printed or corrected", k);
         }
       }},
      {"atom.configuration",
       [&](const std::string& v, const std::string& k) {
         const auto s = lower(v);
         if (s == "xi" || s == "cascade" || s == "ladder") {
           at.configuration = Configuration::xi;
         } else if (s == "v") {
           at.configuration = Configuration::v;
         } else if (s == "lambda") {
           at.configuration = Configuration::lambda;
         } else {
           throw ConfigError("`" + k + "`: expected xi, v or lambda", k);
         }
       }},
      {"atom.delta", number(at.delta)},
      {"atom.delta1",
       [&](const std::string& v, const std::string& k) { at.delta1 = parse_number(v, k); }},
      {"atom.delta2",
       [&](const std::string& v, const std::string& k) { at.delta2 = parse_number(v, k); }},
      {"atom.coupling_ratio", number(at.coupling_ratio)},
      {"atom.atom_start",
       [&](const std::string& v, const std::string& k) { at.atom_start = parse_int(v, k); }},
      {"field.nbar", number(fd.nbar)},
      {"field.beta_phase", number(fd.beta_phase)},
      {"field.n_max",
       [&](const std::string& v, const std::string& k) { fd.n_max = parse_auto_int(v, k); }},
      {"sweep.axis",
       [&](const std::string& v, const std::string& k) {
         const auto s = lower(v);
         if (s == "time") {
           sw.axis = SweepAxis::time;
         } else if (s == "mode_frequency") {
           sw.axis = SweepAxis::mode_frequency;
         } else if (s == "nbar") {
           sw.axis = SweepAxis::nbar;
         } else {
           throw ConfigError("`" + k + "`: expected time, mode_frequency or nbar", k);
         }
       }},
      {"sweep.low", number(sw.low)},
      {"sweep.high", number(sw.high)},
      {"sweep.steps",
       [&](const std::string& v, const std::string& k) { sw.steps = parse_int(v, k); }},
      {"sweep.time", number(sw.time)},
      {"output.name", [&](const std::string& v, const std::string&) { out.name = v; }},
      {"output.directory", [&](const std::string& v, const std::string&) { out.directory = v; }},
      {"output.observables",
       [&](const std::string& v, const std::string& k) {
         out.concurrence = out.entropies = out.populations = false;
         std::istringstream items(v);
         std::string item;
         while (std::getline(items, item, ',')) {
           const auto s = lower(trim(item));
           if (s == "all") {
             out.concurrence = out.entropies = out.populations = true;
           } else if (s == "concurrence") {
             out.concurrence = true;
           } else if (s == "entropies") {
             out.entropies = true;
           } else if (s == "populations") {
             out.populations = true;
           } else {
             throw ConfigError("`" + k + "`: unknown observable `" + s + "`", k);
           }
         }
       }},
      {"output.phase_grids",
       [&](const std::string& v, const std::string& k) { out.phase_grids = parse_bool(v, k); }},
      {"output.phase_stride",
       [&](const std::string& v, const std::string& k) { out.phase_stride = parse_int(v, k); }},
      {"output.grid_size",
       [&](const std::string& v, const std::string& k) { out.grid_size = parse_auto_int(v, k); }},
  };
  const std::vector<std::string> sections = {"medium", "atom", "field", "sweep", "output"};

  for (const auto& [key, entry] : entries) {
    const std::string where =
        entry.line > 0 ? source + ":" + std::to_string(entry.line) + ": " : "override: ";
    if (key.back() == '.') {
      const std::string section = key.substr(0, key.size() - 1);
      if (std::find(sections.begin(), sections.end(), section) == sections.end()) {
        throw ConfigError(where + "unknown section [" + section + "]", section, entry.line);
      }
      continue;
    }
    const auto it = handlers.find(key);
    if (it == handlers.end()) {
      throw ConfigError(where + "unknown key `" + key + "`", key, entry.line);
    }
    try {
      it->second(entry.value, key);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what(), key, entry.line);
    }
  }

  for (const char* k : {"sweep.axis", "sweep.low", "sweep.high", "sweep.steps"}) {
    if (!entries.count(k)) {
      throw ConfigError(std::string("sweep block is missing required key `") + k + "`", k);
    }
  }

  require(sw.steps >= 1, "sweep.steps", "must be at least 1");
  require(sw.low < sw.high, "sweep.low", "sweep range must satisfy low < high");
  if (sw.axis == SweepAxis::nbar) require(sw.low >= 0.0, "sweep.low", "nbar must be >= 0");
  if (sw.axis == SweepAxis::mode_frequency) {
    require(sw.low > 0.0, "sweep.low", "mode frequency must be > 0");
  }
  require(md.hbar_omega_l > 0.0, "medium.hbar_omega_l", "must be positive");
  require(md.hbar_omega_t > 0.0, "medium.hbar_omega_t", "must be positive");
  require(md.omega_ratio > 0.0, "medium.omega_ratio", "must be positive");
  require(md.reference_omega_ratio > 0.0, "medium.reference_omega_ratio", "must be positive");
  require(md.slab_width > 0.0, "medium.slab_width", "must be positive");
  require(std::isfinite(md.coupling_scale), "medium.coupling_scale", "must be finite");
  try {
    effective_permittivity(md.crystal1);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("medium crystal 1 (eps_1, d_1, eps_2, d_2): ") + e.what(),
                      "medium.eps_1");
  }
  try {
    effective_permittivity(md.crystal2);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("medium crystal 2 (eps_3, d_3, eps_4, d_4): ") + e.what(),
                      "medium.eps_3");
  }
  const auto ref = coupling_lambda(md.coupling_model(md.reference_omega_ratio));
  require(ref && *ref != 0.0, "medium.reference_omega_ratio",
          "coupling vanishes or diverges at the reference frequency");
  if (sw.axis != SweepAxis::mode_frequency) {
    require(coupling_lambda(md.coupling_model(md.omega_ratio)).has_value(), "medium.omega_ratio",
            "mode frequency sits on the coupling pole");
  }
  require(at.coupling_ratio > 0.0, "atom.coupling_ratio", "must be positive");
  require(at.atom_start >= 1 && at.atom_start <= 3, "atom.atom_start", "must be 1, 2 or 3");
  require(fd.nbar >= 0.0, "field.nbar", "must be >= 0");
  require(!fd.n_max || *fd.n_max >= 0, "field.n_max", "must be >= 0");
  require(out.phase_stride >= 1, "output.phase_stride", "must be at least 1");
  require(!out.grid_size || (*out.grid_size >= 4 && *out.grid_size % 2 == 0), "output.grid_size",
          "must be an even integer >= 4");
  require(!out.name.empty(), "output.name", "must not be empty");
  return cfg;
}

ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file `" + path + "`");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides, path);
}

}  // namespace pbgqed
