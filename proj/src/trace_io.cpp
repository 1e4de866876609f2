#include "adaptopt/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace adaptopt {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw Error("csv: not a number: '" + s + "'");
  return v;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw Error("csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Table& table, const std::string& path) {
  const std::string text = to_csv(table);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw Error("write failed for '" + path + "'");
}

Table read_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path + "' for reading");
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw Error("csv: empty file '" + path + "'");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell));
    if (row.size() != t.columns.size()) throw Error("csv: ragged row in '" + path + "'");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table gd_table(const GDReport& report, const std::vector<double>& bound) {
  Table t{{"k", "L", "Delta", "delta", "f", "best_f", "inner_loops", "displacement", "delta_hat",
           "bound"},
          {}};
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    const auto& r = report.trace[i];
    const double b = i < bound.size() ? bound[i] : std::nan("");
    t.rows.push_back({double(r.k), r.L, r.Delta, r.delta, r.f, r.best_f, double(r.inner_loops),
                      r.displacement, r.delta_hat, b});
  }
  return t;
}

Table fgm_table(const FGMReport& report, const std::vector<double>& bound) {
  Table t{{"k", "alpha", "A", "L", "Delta", "delta", "f", "inner_loops", "xy_displacement",
           "bound"},
          {}};
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    const auto& r = report.trace[i];
    const double b = i + 1 < bound.size() ? bound[i + 1] : std::nan("");
    t.rows.push_back({double(r.k), r.alpha, r.A, r.L, r.Delta, r.delta, r.f, double(r.inner_loops),
                      r.xy_displacement, b});
  }
  return t;
}

Table restart_gd_table(const RestartGDReport& report) {
  Table t{{"k", "L", "inner_loops", "f", "best_f", "displacement", "delta_hat", "small_step",
           "descent"},
          {}};
  for (const auto& r : report.trace) {
    t.rows.push_back({double(r.k), r.L, double(r.inner_loops), r.f, r.best_f, r.displacement,
                      r.delta_hat, r.small_step ? 1.0 : 0.0, r.descent ? 1.0 : 0.0});
  }
  return t;
}

Table restart_fgm_table(const RestartFGMReport& report) {
  Table t{{"k", "f"}, {}};
  for (std::size_t i = 0; i < report.f_trace.size(); ++i) {
    t.rows.push_back({double(i), report.f_trace[i]});
  }
  return t;
}

Table mirror_prox_table(const MirrorProxReport& report) {
  Table t{{"k", "L", "Delta", "inner_loops", "S", "yx_displacement", "residual"}, {}};
  for (const auto& r : report.trace) {
    t.rows.push_back({double(r.k), r.L, r.Delta, double(r.inner_loops), r.S, r.yx_displacement,
                      r.residual});
  }
  return t;
}

Table switch_table(const SwitchReport& report) {
  Table t{{"k", "productive", "h", "f", "g", "dualnorm", "running_stop_lhs", "running_stop_rhs"},
          {}};
  for (const auto& r : report.trace) {
    t.rows.push_back({double(r.k), r.productive ? 1.0 : 0.0, r.h, r.f, r.g, r.dualnorm,
                      r.running_stop_lhs, r.running_stop_rhs});
  }
  return t;
}

}  // namespace adaptopt
