#pragma once

// Plot-ready CSV traces with lossless 17-significant-digit floats.

#include <string>
#include <vector>

#include "adaptopt/fgm.hpp"
#include "adaptopt/gd.hpp"
#include "adaptopt/nonsmooth.hpp"
#include "adaptopt/switching.hpp"
#include "adaptopt/vi.hpp"

namespace adaptopt {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// %.17g, with inf/nan spelled as inf, -inf and nan.
std::string format_double(double v);
double parse_double(const std::string& s);

/// Writes header + one line per row; throws Error naming the path on I/O failure.
void write_csv(const Table& table, const std::string& path);
Table read_csv(const std::string& path);
std::string to_csv(const Table& table);

/// k, L, Delta, delta, f, best_f, inner_loops, displacement, delta_hat, bound
Table gd_table(const GDReport& report, const std::vector<double>& bound);
/// k, alpha, A, L, Delta, delta, f, inner_loops, xy_displacement, bound
Table fgm_table(const FGMReport& report, const std::vector<double>& bound);
/// k, L, inner_loops, f, best_f, displacement, delta_hat, small_step, descent
Table restart_gd_table(const RestartGDReport& report);
/// k, f
Table restart_fgm_table(const RestartFGMReport& report);
/// k, L, Delta, inner_loops, S, yx_displacement, residual
Table mirror_prox_table(const MirrorProxReport& report);
/// k, productive, h, f, g, dualnorm, running_stop_lhs, running_stop_rhs
Table switch_table(const SwitchReport& report);

}  // namespace adaptopt
