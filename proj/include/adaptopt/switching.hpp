#pragma once

// Mirror descent with productive / unproductive switching for
// min f(x) s.t. g(x) = max_p g_p(x) <= 0, its dual certificate, and the
// relative-accuracy driver for positively homogeneous objectives.

#include <cstdint>
#include <optional>
#include <vector>

#include "adaptopt/functional.hpp"
#include "adaptopt/geometry.hpp"

namespace adaptopt {

enum class SwitchVariant {
  /// Productive iff g <= eps ||grad g||_*; steps eps/||grad f||_*^2 and eps/||grad g||_*.
  kAlg4,
  /// Productive iff g <= eps M_g; stop rule weighted by omega^2.
  kAlg5Omega,
  /// Alg5 with constant productive steps eps / M_f^2.
  kAlg5RelLipschitz,
};
const char* to_string(SwitchVariant v);

struct SwitchConfig {
  double epsilon = 1e-2;
  /// Theta0^2 >= V(x*, x0).
  double Theta0_sq = 1.0;
  SwitchVariant variant = SwitchVariant::kAlg4;
  double omega = 1.0;
  double M_f = 0.0;
  double M_g = 0.0;
  long long N_max = 10'000'000;
  /// Start point; defaults to argmin d.
  std::optional<Vector> x0;

  void check() const;
};

struct SwitchRecord {
  int k = 0;
  bool productive = false;
  double h = 0.0;
  double f = 0.0;
  double g = 0.0;
  /// ||grad f(x^k)||_* on productive steps, ||grad g(x^k)||_* otherwise.
  double dualnorm = 0.0;
  double running_stop_lhs = 0.0;
  double running_stop_rhs = 0.0;
  /// Constraint index attaining g on unproductive steps, -1 otherwise.
  int constraint = -1;
  Vector x;
};

struct SwitchReport {
  Vector x_hat;
  double f_hat = 0.0;
  double g_hat = 0.0;
  int productive = 0;
  int unproductive = 0;
  int iterations = 0;
  bool stopped = false;
  /// A productive step met a zero subgradient of f: x^k minimizes f on Q.
  bool zero_gradient_stop = false;
  double h_sum_productive = 0.0;
  double epsilon = 0.0;
  std::vector<SwitchRecord> trace;
};

using ConstrainedProblem = ProblemSpec;

SwitchReport run_md_alg4(const ConstrainedProblem& problem, const ProxSetup& setup,
                         const SwitchConfig& config);
/// Alg5 in either the omega or the relative-Lipschitz mode (config.variant).
SwitchReport run_md_alg5(const ConstrainedProblem& problem, const ProxSetup& setup,
                         const SwitchConfig& config);
SwitchReport run_switching(const ConstrainedProblem& problem, const ProxSetup& setup,
                           const SwitchConfig& config);

/// ceil(2 Theta0^2 max{1, M_f^2} / eps^2)
long long switching_iteration_bound(double Theta0_sq, double M_f, double epsilon);

/// min_k V(x*, x^k) < eps^2 / 2 on the trace: the escape alternative of Alg5.
bool escape_occurred(const SwitchReport& report, const ProxSetup& setup, const Vector& x_star);

struct DualCertificate {
  Vector lambda_hat;
  double dual_value = 0.0;
  /// f(x_hat) - phi(lambda_hat)
  double gap = 0.0;
};

/// lambda_i = (sum of h_k over unproductive steps on constraint i) /
/// (sum of h_k over productive steps); phi by exact minimization of the
/// Lagrangian, available for affine f and g_p over bounded sets.
DualCertificate dual_certificate(const ConstrainedProblem& problem, const ProxSetup& setup,
                                 const SwitchReport& report);

struct HomogeneityReport {
  int samples = 0;
  int lower_violations = 0;
  int upper_violations = 0;
  /// (gamma0/gamma1) f(x0) <= f* <= f(x0)
  bool value_sandwich = false;
  /// ||x0 - x*|| <= ||x0|| + ||x*|| <= 2 f* / gamma0 <= 2 f(x0) / gamma0
  bool distance_bound = false;
  bool passed() const {
    return lower_violations == 0 && upper_violations == 0 && value_sandwich && distance_bound;
  }
};

/// Euclidean check of gamma0 ||x|| <= f(x) <= gamma1 ||x|| on sampled x
/// together with the value and distance bounds at the minimum-norm feasible
/// point x0 and the optimum x*.
HomogeneityReport homogeneity_probe(const Functional& f, double gamma0, double gamma1,
                                    const Vector& x0_min_norm, const ReferenceOptimum& optimum,
                                    int samples, std::uint64_t seed, double tol = 1e-12);

struct RelativeAccuracyConfig {
  double delta_rel = 0.1;
  double gamma0 = 1.0;
  double gamma1 = 1.0;
  double Theta0_sq = 2.0;
  double M_f = 1.0;
  double M_g = 1.0;
};

struct RelativeAccuracyReport {
  SwitchReport run;
  /// N = ceil(4 / (gamma0^2 delta^2))
  long long N = 0;
  double epsilon = 0.0;
  /// 2 max{1, M_f^2} > Theta0^2
  bool inflated = false;
  /// ceil(8 max{1, M_f^2} / (gamma0^2 delta^2))
  long long inflated_count = 0;
  /// Iteration budget given to the run: N, or ceil(2 N max{1, M_f^2} / Theta0^2).
  long long budget = 0;
  double rel_error_bound = 0.0;
  double constraint_bound = 0.0;
};

RelativeAccuracyReport relative_accuracy_run(const ConstrainedProblem& problem,
                                             const ProxSetup& setup,
                                             const RelativeAccuracyConfig& config);

}  // namespace adaptopt
