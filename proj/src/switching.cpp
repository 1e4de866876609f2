#include "adaptopt/switching.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "adaptopt/rng.hpp"

namespace adaptopt {

namespace {

bool reached(double lhs, double rhs) { return lhs >= rhs * (1.0 - 1e-12); }

}  // namespace

const char* to_string(SwitchVariant v) {
  switch (v) {
    case SwitchVariant::kAlg4: return "alg4";
    case SwitchVariant::kAlg5Omega: return "alg5-omega";
    case SwitchVariant::kAlg5RelLipschitz: return "alg5-rel-lipschitz";
  }
  return "unknown";
}

void SwitchConfig::check() const {
  if (!(epsilon > 0.0)) throw Error("switching: epsilon must be positive");
  if (!(Theta0_sq > 0.0)) throw Error("switching: Theta0^2 must be positive");
  if (N_max < 1) throw Error("switching: N_max must be >= 1");
  if (variant == SwitchVariant::kAlg5Omega && !(omega > 0.0)) {
    throw Error("switching: omega must be positive");
  }
  if (variant == SwitchVariant::kAlg5RelLipschitz && !(M_f > 0.0)) {
    throw Error("switching: M_f must be positive in the relative-Lipschitz mode");
  }
  if (variant != SwitchVariant::kAlg4 && !(M_g > 0.0)) {
    throw Error("switching: M_g must be positive for Alg5");
  }
}

long long switching_iteration_bound(double Theta0_sq, double M_f, double epsilon) {
  if (!(epsilon > 0.0)) throw Error("switching bound: epsilon must be positive");
  return static_cast<long long>(
      std::ceil(2.0 * Theta0_sq * std::max(1.0, M_f * M_f) / (epsilon * epsilon)));
}

SwitchReport run_switching(const ConstrainedProblem& problem, const ProxSetup& setup,
                           const SwitchConfig& config) {
  config.check();
  const double eps = config.epsilon;
  const bool alg4 = config.variant == SwitchVariant::kAlg4;
  const bool rel = config.variant == SwitchVariant::kAlg5RelLipschitz;
  Vector x = config.x0 ? *config.x0 : prox_center(setup);
  check_dim(setup, x, "run_switching");

  SwitchReport report;
  report.epsilon = eps;
  Vector weighted = Vector::Zero(setup.dim());
  double stop_sum = 0.0;
  const double stop_rhs = rel ? 2.0 * config.Theta0_sq : 2.0 * config.Theta0_sq / (eps * eps);

  for (long long k = 0; k < config.N_max; ++k) {
    SwitchRecord rec;
    rec.k = static_cast<int>(k);
    rec.x = x;
    rec.f = problem.objective.value(x);
    const bool constrained = !problem.constraints.empty();
    rec.g = constrained ? problem.constraint_value(x) : -std::numeric_limits<double>::infinity();
    Vector gg;
    double gg_norm = 0.0;
    if (constrained) {
      rec.constraint = problem.active_constraint(x);
      gg = problem.constraints[rec.constraint].subgradient(x);
      gg_norm = dual_norm(setup, gg);
    }
    const double threshold = alg4 ? eps * gg_norm : eps * config.M_g;
    rec.productive = !constrained || rec.g <= threshold;

    Vector step;
    if (rec.productive) {
      rec.constraint = -1;
      const Vector gf = problem.objective.subgradient(x);
      rec.dualnorm = dual_norm(setup, gf);
      if (rec.dualnorm == 0.0 && !rel) {
        // x^k minimizes f on Q and satisfies the productive test.
        report.zero_gradient_stop = true;
        report.trace.push_back(rec);
        ++report.productive;
        report.x_hat = x;
        report.stopped = true;
        break;
      }
      rec.h = rel ? eps / (config.M_f * config.M_f) : eps / (rec.dualnorm * rec.dualnorm);
      if (rel) {
        stop_sum += eps * eps / (config.M_f * config.M_f);
      } else {
        const double w = alg4 ? 1.0 : config.omega * config.omega;
        stop_sum += w / (rec.dualnorm * rec.dualnorm);
      }
      step = rec.h * gf;
      weighted += rec.h * x;
      report.h_sum_productive += rec.h;
      ++report.productive;
    } else {
      rec.dualnorm = gg_norm;
      if (gg_norm == 0.0) {
        std::ostringstream os;
        os << "switching: zero constraint subgradient at a violated point (k=" << k
           << ", g=" << rec.g << ")";
        throw Error(os.str());
      }
      rec.h = alg4 ? eps / gg_norm : eps / config.M_g;
      stop_sum += rel ? eps * eps : 1.0;
      step = rec.h * gg;
      ++report.unproductive;
    }
    rec.running_stop_lhs = stop_sum;
    rec.running_stop_rhs = stop_rhs;
    report.trace.push_back(rec);
    x = mirror_step(setup, x, step);
    if (reached(stop_sum, stop_rhs)) {
      report.stopped = true;
      break;
    }
  }
  report.iterations = static_cast<int>(report.trace.size());
  if (!report.zero_gradient_stop) {
    if (report.h_sum_productive > 0.0) {
      report.x_hat = weighted / report.h_sum_productive;
    } else {
      report.x_hat = x;
    }
  }
  if (report.productive == 0) report.stopped = false;
  report.f_hat = problem.objective.value(report.x_hat);
  report.g_hat = problem.constraints.empty() ? -std::numeric_limits<double>::infinity()
                                             : problem.constraint_value(report.x_hat);
  return report;
}

SwitchReport run_md_alg4(const ConstrainedProblem& problem, const ProxSetup& setup,
                         const SwitchConfig& config) {
  SwitchConfig c = config;
  c.variant = SwitchVariant::kAlg4;
  return run_switching(problem, setup, c);
}

SwitchReport run_md_alg5(const ConstrainedProblem& problem, const ProxSetup& setup,
                         const SwitchConfig& config) {
  if (config.variant == SwitchVariant::kAlg4) throw Error("run_md_alg5: choose an Alg5 variant");
  return run_switching(problem, setup, config);
}

bool escape_occurred(const SwitchReport& report, const ProxSetup& setup, const Vector& x_star) {
  const double limit = 0.5 * report.epsilon * report.epsilon;
  for (const auto& rec : report.trace) {
    if (bregman(setup, x_star, rec.x) < limit) return true;
  }
  return false;
}

DualCertificate dual_certificate(const ConstrainedProblem& problem, const ProxSetup& setup,
                                 const SwitchReport& report) {
  if (!setup.bounded()) throw Error("dual_certificate: Q must be bounded");
  if (!problem.objective.is_affine()) {
    throw Error("dual_certificate: Lagrangian minimization needs an affine objective");
  }
  for (const auto& c : problem.constraints) {
    if (!c.is_affine()) throw Error("dual_certificate: Lagrangian minimization needs affine g_p");
  }
  if (!(report.h_sum_productive > 0.0)) {
    throw Error("dual_certificate: run has no productive steps");
  }
  const int m = static_cast<int>(problem.constraints.size());
  DualCertificate out;
  out.lambda_hat = Vector::Zero(m);
  for (const auto& rec : report.trace) {
    if (!rec.productive) out.lambda_hat[rec.constraint] += rec.h;
  }
  out.lambda_hat /= report.h_sum_productive;

  Vector slope = problem.objective.affine_slope();
  double offset = problem.objective.affine_offset();
  for (int i = 0; i < m; ++i) {
    slope += out.lambda_hat[i] * problem.constraints[i].affine_slope();
    offset += out.lambda_hat[i] * problem.constraints[i].affine_offset();
  }
  out.dual_value = offset - support(setup, Vector(-slope));
  out.gap = report.f_hat - out.dual_value;
  return out;
}

HomogeneityReport homogeneity_probe(const Functional& f, double gamma0, double gamma1,
                                    const Vector& x0_min_norm, const ReferenceOptimum& optimum,
                                    int samples, std::uint64_t seed, double tol) {
  if (!(gamma0 > 0.0) || gamma1 < gamma0) throw Error("homogeneity probe: need 0 < gamma0 <= gamma1");
  HomogeneityReport out;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Vector x = rng.normal_vector(f.dim()) * rng.uniform(0.0, 4.0);
    const double fx = f.value(x);
    const double nx = x.norm();
    if (fx < gamma0 * nx - tol * (1.0 + nx)) ++out.lower_violations;
    if (fx > gamma1 * nx + tol * (1.0 + nx)) ++out.upper_violations;
    ++out.samples;
  }
  const double f0 = f.value(x0_min_norm);
  const double fs = optimum.value;
  const double slack = tol * (1.0 + std::abs(f0));
  out.value_sandwich = (gamma0 / gamma1) * f0 <= fs + slack && gamma0 * x0_min_norm.norm() <= fs + slack &&
                       fs <= f0 + slack;
  const double dist = (x0_min_norm - optimum.point).norm();
  const double sum = x0_min_norm.norm() + optimum.point.norm();
  out.distance_bound = dist <= sum + slack && sum <= 2.0 * fs / gamma0 + slack &&
                       fs <= f0 + slack;
  return out;
}

RelativeAccuracyReport relative_accuracy_run(const ConstrainedProblem& problem,
                                             const ProxSetup& setup,
                                             const RelativeAccuracyConfig& config) {
  if (!(config.delta_rel > 0.0) || !(config.gamma0 > 0.0)) {
    throw Error("relative accuracy: delta and gamma0 must be positive");
  }
  RelativeAccuracyReport out;
  const double g2d2 = config.gamma0 * config.gamma0 * config.delta_rel * config.delta_rel;
  out.N = static_cast<long long>(std::ceil(4.0 / g2d2 - 1e-9));
  const double mx = std::max(1.0, config.M_f * config.M_f);
  out.epsilon = config.Theta0_sq / std::sqrt(static_cast<double>(out.N));
  out.inflated = 2.0 * mx > config.Theta0_sq;
  out.inflated_count = static_cast<long long>(std::ceil(8.0 * mx / g2d2 - 1e-9));
  out.budget = out.inflated
                   ? static_cast<long long>(std::ceil(2.0 * out.N * mx / config.Theta0_sq - 1e-9))
                   : out.N;
  out.rel_error_bound = 2.0 / (config.gamma0 * std::sqrt(static_cast<double>(out.N)));
  out.constraint_bound = config.M_g * out.epsilon;

  SwitchConfig sc;
  sc.epsilon = out.epsilon;
  sc.Theta0_sq = config.Theta0_sq;
  sc.variant = SwitchVariant::kAlg5RelLipschitz;
  sc.M_f = config.M_f;
  sc.M_g = config.M_g;
  sc.N_max = out.budget;
  out.run = run_switching(problem, setup, sc);
  return out;
}

}  // namespace adaptopt
