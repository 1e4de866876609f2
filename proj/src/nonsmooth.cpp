#include "adaptopt/nonsmooth.hpp"

#include "adaptopt/fgm.hpp"

#include <cmath>

namespace adaptopt {

namespace {

int smallest_power(double r) {
  int p = 0;
  while (std::ldexp(1.0, p) < 1.0 + r) ++p;
  return p;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(std::string(what) + " must be positive");
}

double log_factor(double argument) {
  return std::max(1.0, std::ceil(std::log2(argument)));
}

}  // namespace

const char* to_string(RestartMode mode) {
  switch (mode) {
    case RestartMode::kGD: return "gd";
    case RestartMode::kGDStronglyConvex: return "gd-strongly-convex";
    case RestartMode::kFGM: return "fgm";
  }
  return "unknown";
}

int choose_p_gd(double Delta, double epsilon, double L) {
  require_positive(epsilon, "epsilon");
  require_positive(L, "L");
  return smallest_power(16.0 * Delta * Delta / (epsilon * L));
}

int choose_p_fgm(double Delta, double epsilon, double L, double gamma) {
  require_positive(epsilon, "epsilon");
  require_positive(L, "L");
  if (gamma < 1.0) throw Error("choose_p_fgm: gamma must be >= 1");
  return smallest_power(4.0 * gamma * Delta * Delta / (L * epsilon));
}

double predicted_calls(const RestartPlan& plan, double L, double Delta, double R2, double mu,
                       double C) {
  const double eps = plan.epsilon;
  require_positive(eps, "epsilon");
  require_positive(L, "L");
  if (R2 < 0.0 || Delta < 0.0) throw Error("predicted_calls: negative R2 or Delta");
  const double R = std::sqrt(R2);
  const double D2 = Delta * Delta;
  switch (plan.mode) {
    case RestartMode::kGD:
      if (mu != 0.0) throw Error("predicted_calls: gd mode requires mu = 0");
      return std::ceil(4.0 * L * R2 / eps + 64.0 * D2 * R2 / (eps * eps)) *
             log_factor(1.0 + 16.0 * D2 / (eps * L));
    case RestartMode::kFGM: {
      if (mu != 0.0) throw Error("predicted_calls: fgm mode requires mu = 0");
      const double bracket = (32.0 + 16.0 * std::sqrt(2.0)) * D2 * R2 / (eps * eps) +
                             2.0 * R * std::sqrt(2.0 * L) / std::sqrt(eps);
      const double arg = 1.0 + (128.0 + 64.0 * std::sqrt(2.0)) * D2 * D2 * R2 / (L * eps * eps * eps) +
                         8.0 * R * D2 * std::sqrt(2.0) / std::sqrt(L * eps * eps * eps);
      return std::ceil(bracket) * log_factor(arg);
    }
    case RestartMode::kGDStronglyConvex: {
      require_positive(mu, "mu");
      if (C < 1.0) throw Error("predicted_calls: C must be >= 1");
      const double head = (2.0 * C * L / mu + 32.0 * C * D2 / (mu * eps)) *
                          std::log(4.0 * C * L * R2 / eps + 64.0 * C * R2 / (eps * eps));
      return std::ceil(head) * log_factor(1.0 + 16.0 * D2 / (eps * L)) - 1.0;
    }
  }
  throw Error("predicted_calls: unknown mode");
}

double inflation_factor(double L, double Delta, double L0, double Delta0) {
  require_positive(L0, "L0");
  double r = 2.0 * L / L0;
  if (Delta > 0.0) {
    require_positive(Delta0, "Delta0");
    r = std::max(r, 2.0 * Delta / Delta0);
  }
  return std::ceil(r);
}

RestartGDReport run_restarted_gd(const ProxSetup& setup, const ModelOracle& oracle,
                                 const ExactFunction& f, const Vector& x0,
                                 const RestartGDConfig& config) {
  require_positive(config.epsilon, "epsilon");
  require_positive(config.L, "L");
  if (config.Delta < 0.0 || config.R2 < 0.0) throw Error("restarted GD: negative Delta or R2");
  if (config.stop == StopRule::kTarget && !config.f_star) {
    throw Error("restarted GD: target stop rule needs f_star");
  }
  check_dim(setup, x0, "run_restarted_gd");
  if (!setup.contains(x0)) throw Error("restarted GD: x0 is not feasible");

  RestartGDReport report;
  report.p = config.p >= 0 ? config.p : choose_p_gd(config.Delta, config.epsilon, config.L);
  const int attempts = std::max(1, report.p);
  const double eps = config.epsilon;

  Vector x = x0;
  double fx = f(x0);
  double best = 0.0;
  double S = 0.0, noise = 0.0;
  report.y_out = x0;
  report.f_out = fx;

  for (int k = 0;; ++k) {
    if (config.stop == StopRule::kFixed && k >= config.fixed_iterations) {
      report.stopped = true;
      break;
    }
    if (report.calls >= config.max_calls) break;
    const LocalModel psi = oracle.model(x);
    Vector xn;
    double Lj = 0.0, dist = 0.0, fxn = 0.0;
    bool small = false, descent = false;
    int loops = 0;
    for (int j = 1; j <= attempts; ++j) {
      ++loops;
      ++report.calls;
      Lj = std::ldexp(config.L, j);
      xn = prox_step(setup, x, psi, Lj).point;
      dist = primal_norm(setup, xn - x);
      fxn = f(xn);
      small = config.Delta * dist <= eps / 2.0;
      descent = fxn <= fx + psi(xn) + Lj * bregman(setup, xn, x) + 1e-12 * (1.0 + std::abs(fx));
      if (small || descent) break;
    }
    if (!small && !descent) ++report.termination_failures;

    RestartIterRecord rec;
    rec.k = k;
    rec.L = Lj;
    rec.inner_loops = loops;
    rec.f = fxn;
    rec.displacement = dist;
    rec.delta_hat = descent ? 0.0 : config.Delta * dist;
    rec.small_step = small;
    rec.descent = descent;
    if (k == 0 || fxn < best) {
      best = fxn;
      report.y_out = xn;
      report.f_out = fxn;
    }
    rec.best_f = best;
    report.trace.push_back(rec);
    ++report.iterations;

    S += 1.0 / Lj;
    noise += rec.delta_hat / Lj;
    report.certificate = (config.R2 + noise) / S;
    x = std::move(xn);
    fx = fxn;

    if (config.stop == StopRule::kCertificate && report.certificate <= eps) {
      report.stopped = true;
      break;
    }
    if (config.stop == StopRule::kTarget && best <= *config.f_star + eps) {
      report.stopped = true;
      break;
    }
  }
  return report;
}

int restarted_fgm_iterations(double epsilon, double L, double Delta, double R2) {
  require_positive(epsilon, "epsilon");
  require_positive(L, "L");
  if (Delta == 0.0) return static_cast<int>(std::ceil(std::sqrt(8.0 * L * R2 / epsilon)));
  const double a = 32.0 * Delta * Delta * R2 / (epsilon * epsilon);
  const double N2 = a + std::sqrt(a * a + 16.0 * L * R2 / epsilon);
  if (N2 > 2e9) throw Error("restarted FGM: iteration count exceeds int range");
  return static_cast<int>(std::ceil(N2));
}

RestartFGMReport run_restarted_fgm(const ProxSetup& setup, const ModelOracle& oracle,
                                   const ExactFunction& f, const Vector& x0,
                                   const RestartFGMConfig& config) {
  if (config.Delta < 0.0 || config.R2 < 0.0) throw Error("restarted FGM: negative Delta or R2");
  check_dim(setup, x0, "run_restarted_fgm");
  if (!setup.contains(x0)) throw Error("restarted FGM: x0 is not feasible");

  RestartFGMReport report;
  const double eps = config.epsilon;
  const double Delta = config.Delta;
  report.N = restarted_fgm_iterations(eps, config.L, Delta, config.R2);
  report.gamma = std::max(1, report.N);
  report.p = Delta > 0.0 ? choose_p_fgm(Delta, eps, config.L, report.gamma) : 0;
  report.L_fixed = std::ldexp(config.L, report.p);
  const double artificial = Delta > 0.0 ? eps / (2.0 * report.gamma) : 0.0;
  const double curvature_gap = (std::ldexp(1.0, report.p) - 1.0) * config.L / 2.0;

  Vector x = x0, u = x0;
  double A = 0.0;
  report.f_trace.reserve(report.N);
  for (int k = 0; k < report.N; ++k) {
    const double alpha = largest_root_alpha(A, report.L_fixed);
    const double A_next = A + alpha;
    const Vector y = (alpha * u + A * x) / A_next;
    const LocalModel psi = oracle.model(y);
    ++report.calls;
    u = prox_step(setup, u, psi, 1.0 / alpha).point;
    const Vector x_next = (alpha * u + A * x) / A_next;
    const double dist = primal_norm(setup, x_next - y);
    const bool alt_small = Delta * dist <= artificial;
    const bool alt_curved = curvature_gap * dist * dist >= Delta * dist;
    if (!alt_small && !alt_curved) ++report.alternative_violations;
    const double fy = f(y);
    const double fx_next = f(x_next);
    if (fx_next > fy + psi(x_next) + 0.5 * report.L_fixed * dist * dist + artificial +
                      1e-12 * (1.0 + std::abs(fy))) {
      ++report.descent_violations;
    }
    report.f_trace.push_back(fx_next);
    x = x_next;
    A = A_next;
  }
  report.x_out = x;
  report.f_out = f(x);
  const double n1 = report.N + 1.0;
  report.bound = 8.0 * report.L_fixed * config.R2 / (n1 * n1) + artificial * report.N;
  return report;
}

}  // namespace adaptopt
