#include "adaptopt/fgm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace adaptopt {

namespace {

double halve(double v) { return v > 0.0 ? std::max(v / 2.0, kParameterFloor) : 0.0; }

}  // namespace

void FGMConfig::check() const {
  if (!(L0 > 0.0) || !std::isfinite(L0)) throw Error("FGM: L0 must be positive");
  if (Delta0 < 0.0 || delta0 < 0.0) throw Error("FGM: negative parameter");
  if (N < 0) throw Error("FGM: iteration budget must be >= 0");
  if (inner_cap < 1) throw Error("FGM: inner_cap must be >= 1");
}

double largest_root_alpha(double A, double L) {
  if (A < 0.0 || !(L > 0.0)) throw Error("largest_root_alpha: need A >= 0, L > 0");
  return (1.0 + std::sqrt(1.0 + 4.0 * L * A)) / (2.0 * L);
}

FGMReport run_adaptive_fgm(const ProxSetup& setup, const ModelOracle& oracle, const ExactFunction& f,
                           const Vector& x0, const FGMConfig& config) {
  config.check();
  check_dim(setup, x0, "run_adaptive_fgm");
  if (!setup.contains(x0)) throw Error("FGM: x0 is not feasible");

  FGMReport report;
  report.x0 = x0;
  report.f0 = f(x0);
  Vector x = x0, u = x0;
  double A = 0.0;
  double L = config.L0 / 2.0, Delta = halve(config.Delta0), delta = halve(config.delta0);
  const double L_ceiling = std::ldexp(config.L0, 60);

  for (int k = 0; k < config.N; ++k) {
    int loops = 0;
    while (true) {
      ++loops;
      ++report.oracle_calls;
      const double alpha = largest_root_alpha(A, L);
      const double A_next = A + alpha;
      const Vector y = (alpha * u + A * x) / A_next;
      const LocalModel psi = oracle.model(y);
      const ProxResult step = prox_step(setup, u, psi, 1.0 / alpha);
      const Vector x_next = (alpha * step.point + A * x) / A_next;
      const double dist = primal_norm(setup, x_next - y);
      const double fd_y = oracle.value(y);
      const double rhs = fd_y + psi(x_next) + 0.5 * L * dist * dist + Delta * dist + delta;
      const double tol = config.slack * (1.0 + std::abs(fd_y));
      if (oracle.value(x_next) <= rhs + tol) {
        FGMIterRecord rec;
        rec.k = k;
        rec.alpha = alpha;
        rec.A = A_next;
        rec.L = L;
        rec.Delta = Delta;
        rec.delta = delta;
        rec.y = y;
        rec.u = step.point;
        rec.x = x_next;
        rec.f = f(x_next);
        rec.inner_loops = loops;
        rec.xy_displacement = dist;
        rec.prox_residual = step.residual;
        report.prox_residual = std::max(report.prox_residual, step.residual);
        u = step.point;
        x = x_next;
        A = A_next;
        report.trace.push_back(std::move(rec));
        break;
      }
      if (loops > config.inner_cap || 2.0 * L > L_ceiling) {
        std::ostringstream os;
        os << "adaptive FGM: doubling cap exceeded at iteration " << k << " (L=" << L
           << ", Delta=" << Delta << ", delta=" << delta << "); declared model likely invalid";
        throw SolverError(os.str());
      }
      L *= 2.0;
      Delta *= 2.0;
      delta *= 2.0;
    }
    L /= 2.0;
    Delta = halve(Delta);
    delta = halve(delta);
  }
  report.x_out = x;
  report.f_out = report.trace.empty() ? report.f0 : report.trace.back().f;
  return report;
}

std::vector<double> bound_fgm(const FGMReport& report, double R2, double delta) {
  std::vector<double> out;
  out.reserve(report.trace.size() + 1);
  out.push_back(std::numeric_limits<double>::infinity());
  double noise = 0.0;
  for (const auto& rec : report.trace) {
    noise += (rec.Delta * rec.xy_displacement + rec.delta + delta) * rec.A;
    out.push_back((R2 + noise) / rec.A);
  }
  return out;
}

bool check_Ak_growth(const FGMReport& report, double L_true, double C) {
  for (const auto& rec : report.trace) {
    const double k = rec.k + 1;
    const double lower = (k + 1.0) * (k + 1.0) / (8.0 * C * L_true);
    if (rec.A < lower * (1.0 - 1e-12)) return false;
  }
  return true;
}

BudgetCheck check_oracle_budget(const FGMReport& report, const FGMConfig& config, double L_true,
                                double delta_true, double Delta_true) {
  BudgetCheck out;
  const int k = static_cast<int>(report.trace.size());
  out.used = report.oracle_calls;
  out.allowance = budget_allowance(k, config.L0, config.delta0, config.Delta0, L_true, delta_true,
                                   Delta_true);
  out.slack = out.allowance - static_cast<double>(out.used);
  const double C = budget_constant(config.delta0, config.Delta0, delta_true, Delta_true);
  for (const auto& rec : report.trace) {
    out.max_L_ratio = std::max(out.max_L_ratio, rec.L / (2.0 * C * L_true));
  }
  out.ok = out.slack >= 0.0 && out.max_L_ratio <= 1.0;
  return out;
}

}  // namespace adaptopt
