#include "adaptopt/gd.hpp"

#include <cmath>
#include <sstream>

namespace adaptopt {

namespace {

double halve(double v) { return v > 0.0 ? std::max(v / 2.0, kParameterFloor) : 0.0; }

}  // namespace

void GDConfig::check() const {
  if (!(L0 > 0.0) || !std::isfinite(L0)) throw Error("GD: L0 must be positive");
  if (Delta0 < 0.0 || delta0 < 0.0 || mu < 0.0) throw Error("GD: negative parameter");
  if (!(2.0 * mu < L0)) throw Error("GD: requires 2 mu < L0");
  if (N < 0) throw Error("GD: iteration budget must be >= 0");
  if (inner_cap < 1) throw Error("GD: inner_cap must be >= 1");
}

GDReport run_adaptive_gd(const ProxSetup& setup, const ModelOracle& oracle, const ExactFunction& f,
                         const Vector& x0, const GDConfig& config) {
  config.check();
  check_dim(setup, x0, "run_adaptive_gd");
  if (!setup.contains(x0)) throw Error("GD: x0 is not feasible");

  GDReport report;
  report.x0 = x0;
  report.f0 = f(x0);
  report.trace.reserve(config.N);

  Vector x = x0;
  double fd_x = oracle.value(x);
  double L = config.L0, Delta = config.Delta0, delta = config.delta0;
  double best = 0.0;
  const double L_ceiling = std::ldexp(config.L0, 60);

  for (int k = 0; k < config.N; ++k) {
    double Lk = std::max(config.mu, L / 2.0);
    double Dk = halve(Delta);
    double dk = halve(delta);
    const LocalModel psi = oracle.model(x);
    const double tol = config.slack * (1.0 + std::abs(fd_x));
    int loops = 0;
    while (true) {
      ++loops;
      ++report.oracle_calls;
      const ProxResult step = prox_step(setup, x, psi, Lk);
      report.prox_residual = std::max(report.prox_residual, step.residual);
      const Vector& xn = step.point;
      const double dist = primal_norm(setup, xn - x);
      const double fd_xn = oracle.value(xn);
      const double rhs = fd_x + psi(xn) + Lk * bregman(setup, xn, x) + dk + Dk * dist;
      if (fd_xn <= rhs + tol) {
        GDIterRecord rec;
        rec.k = k;
        rec.L = Lk;
        rec.Delta = Dk;
        rec.delta = dk;
        rec.x = xn;
        rec.f = f(xn);
        rec.inner_loops = loops;
        rec.displacement = dist;
        rec.delta_hat = dk + Dk * dist;
        if (report.best_index < 0 || rec.f < best) {
          best = rec.f;
          report.best_index = k;
        }
        rec.best_f = best;
        report.trace.push_back(std::move(rec));
        x = xn;
        fd_x = fd_xn;
        break;
      }
      if (loops > config.inner_cap || 2.0 * Lk > L_ceiling) {
        std::ostringstream os;
        os << "adaptive GD: doubling cap exceeded at iteration " << k << " (L=" << Lk
           << ", Delta=" << Dk << ", delta=" << dk << "); declared model likely invalid";
        throw SolverError(os.str());
      }
      Lk *= 2.0;
      Dk *= 2.0;
      dk *= 2.0;
    }
    L = Lk;
    Delta = Dk;
    delta = dk;
  }

  if (report.best_index >= 0) {
    report.y_out = report.trace[report.best_index].x;
    report.f_out = report.trace[report.best_index].f;
  } else {
    report.y_out = x0;
    report.f_out = report.f0;
  }
  return report;
}

BoundTerms bound_th03(const std::vector<GDIterRecord>& trace, double R2, double delta, double mu) {
  if (R2 < 0.0) throw Error("bound_th03: R2 must be nonnegative");
  BoundTerms out;
  double P = 1.0, W = 0.0, Nsum = 0.0;
  for (const auto& rec : trace) {
    const double q = 1.0 - mu / rec.L;
    P *= q;
    W = W * q + 1.0 / rec.L;
    Nsum = Nsum * q + (delta + rec.delta_hat) / rec.L;
    out.mu_product.push_back(P);
    out.weight_sum.push_back(W);
    out.noise_sum.push_back(Nsum);
    out.rhs.push_back((P * R2 + Nsum) / W);
  }
  return out;
}

double budget_constant(double delta0, double Delta0, double delta_true, double Delta_true) {
  double C = 1.0;
  if (delta_true > 0.0) C = std::max(C, delta0 > 0.0 ? 2.0 * delta_true / delta0 : HUGE_VAL);
  if (Delta_true > 0.0) C = std::max(C, Delta0 > 0.0 ? 2.0 * Delta_true / Delta0 : HUGE_VAL);
  return C;
}

double budget_allowance(int k, double L0, double delta0, double Delta0, double L_true,
                        double delta_true, double Delta_true) {
  double extra = std::log2(2.0 * L_true / L0);
  if (delta_true > 0.0) {
    extra = std::max(extra, delta0 > 0.0 ? std::log2(2.0 * delta_true / delta0) : HUGE_VAL);
  }
  if (Delta_true > 0.0) {
    extra = std::max(extra, Delta0 > 0.0 ? std::log2(2.0 * Delta_true / Delta0) : HUGE_VAL);
  }
  return 2.0 * k + extra;
}

BudgetCheck check_oracle_budget(const GDReport& report, const GDConfig& config, double L_true,
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
