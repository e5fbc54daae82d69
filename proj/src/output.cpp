#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>

#include "pbgqed/error.hpp"
#include "pbgqed/scenario.hpp"

namespace pbgqed {

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open `" + path + "` for writing");
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  out.flush();
  if (!out) throw IoError("failed writing `" + path + "`");
}

std::optional<double> column_value(const ObservableRow& row, const std::string& column) {
  if (row.pole) return std::nullopt;
  if (column == "concurrence") return row.concurrence;
  if (column == "r_n") return row.r_n;
  if (column == "r_psi") return row.r_psi;
  if (column == "entropy_sum") return row.entropy_sum;
  if (column == "p1") return row.populations[0];
  if (column == "p2") return row.populations[1];
  if (column == "p3") return row.populations[2];
  throw std::invalid_argument("unknown column `" + column + "`");
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string format_csv(const std::vector<ObservableRow>& rows, const OutputBlock& output) {
  std::string out = kCsvHeader;
  out += '\n';
  const std::string nan = "nan";
  for (const auto& r : rows) {
    out += format_number(r.axis);
    if (r.pole) {
      for (int i = 0; i < 7; ++i) out += ",pole";
    } else {
      out += ',';
      out += output.concurrence ? format_number(r.concurrence) : nan;
      for (double v : {r.r_n, r.r_psi, r.entropy_sum}) {
        out += ',';
        out += output.entropies ? format_number(v) : nan;
      }
      for (double v : r.populations) {
        out += ',';
        out += output.populations ? format_number(v) : nan;
      }
    }
    out += '\n';
  }
  return out;
}

std::string format_phase_grid(const PhaseGrid& grid) {
  std::string out = "theta,p_theta\n";
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    out += format_number(grid.theta[k]);
    out += ',';
    out += format_number(grid.values[k]);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<ObservableRow>& rows, const std::string& path,
              const OutputBlock& output) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows to write");
  write_file(path, format_csv(rows, output));
}

void emit_phase_grid(const PhaseGrid& grid, const std::string& path) {
  write_file(path, format_phase_grid(grid));
}

std::string format_svg(const std::vector<ObservableRow>& rows, const std::string& column,
                       const std::string& axis_label) {
  constexpr double width = 640, height = 400, margin = 50;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& r : rows) {
    x_lo = std::min(x_lo, r.axis);
    x_hi = std::max(x_hi, r.axis);
    if (const auto v = column_value(r, column)) {
      y_lo = std::min(y_lo, *v);
      y_hi = std::max(y_hi, *v);
    }
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) {
    y_lo = std::isfinite(y_lo) ? y_lo - 0.5 : 0.0;
    y_hi = y_lo + 1.0;
  }
  auto sx = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin); };
  auto sy = [&](double y) { return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin); };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
                    "viewBox=\"0 0 640 400\">\n";
  svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<rect x=\"50\" y=\"50\" width=\"540\" height=\"300\" fill=\"none\" stroke=\"black\"/>\n";
  std::string points;
  auto flush = [&] {
    if (!points.empty()) {
      svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"" +
             points + "\"/>\n";
      points.clear();
    }
  };
  for (const auto& r : rows) {
    const auto v = column_value(r, column);
    if (!v) {
      flush();
      continue;
    }
    if (!points.empty()) points += ' ';
    points += format_number(sx(r.axis)) + "," + format_number(sy(*v));
  }
  flush();
  auto text = [&](double x, double y, const std::string& s, const char* anchor) {
    svg += "<text x=\"" + format_number(x) + "\" y=\"" + format_number(y) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"" + anchor + "\">" + s +
           "</text>\n";
  };
  text(margin, height - margin + 16, format_number(x_lo), "start");
  text(width - margin, height - margin + 16, format_number(x_hi), "end");
  text(width / 2, height - 12, axis_label, "middle");
  text(margin - 4, height - margin, format_number(y_lo), "end");
  text(margin - 4, margin + 10, format_number(y_hi), "end");
  text(width / 2, margin - 16, column, "middle");
  svg += "</svg>\n";
  return svg;
}

void emit_svg(const std::vector<ObservableRow>& rows, const std::string& column,
              const std::string& axis_label, const std::string& path) {
  write_file(path, format_svg(rows, column, axis_label));
}

std::vector<std::string> write_outputs(const ScenarioConfig& config, const ScenarioResult& result,
                                       bool svg) {
  namespace fs = std::filesystem;
  const fs::path dir(config.output.directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory `" + dir.string() + "`: " + ec.message());

  const std::string& name = config.output.name;
  std::vector<std::string> written;
  const std::string csv = (dir / (name + ".csv")).string();
  emit_csv(result.rows, csv, config.output);
  written.push_back(csv);

  for (const auto& dump : result.phase_grids) {
    char index[16];
    std::snprintf(index, sizeof index, "%05zu", dump.row);
    const std::string path = (dir / (name + "_phase_" + index + ".csv")).string();
    emit_phase_grid(dump.grid, path);
    written.push_back(path);
  }

  if (svg) {
    const char* axis_label = config.sweep.axis == SweepAxis::time             ? "scaled time"
                             : config.sweep.axis == SweepAxis::mode_frequency ? "omega / omega_T"
                                                                              : "mean photon number";
    std::vector<std::string> columns;
    if (config.output.concurrence) columns.push_back("concurrence");
    if (config.output.entropies) columns.insert(columns.end(), {"r_n", "r_psi", "entropy_sum"});
    if (config.output.populations) columns.insert(columns.end(), {"p1", "p2", "p3"});
    for (const auto& column : columns) {
      const std::string path = (dir / (name + "_" + column + ".svg")).string();
      emit_svg(result.rows, column, axis_label, path);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace pbgqed
