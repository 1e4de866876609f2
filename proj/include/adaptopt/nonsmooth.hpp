#pragma once

// Artificial-inexactness drivers for nonsmooth problems: the doubling
// exponent p, the restarted gradient method, the fixed-step fast gradient
// method, and closed-form subgradient-call budgets.

#include <optional>
#include <string>
#include <vector>

#include "adaptopt/model.hpp"
#include "adaptopt/validate.hpp"

namespace adaptopt {

/// Smallest p >= 0 with 2^p >= 1 + 16 Delta^2 / (epsilon L).
int choose_p_gd(double Delta, double epsilon, double L);
/// p = ceil(log2(1 + 4 gamma Delta^2 / (L epsilon))).
int choose_p_fgm(double Delta, double epsilon, double L, double gamma);

enum class RestartMode { kGD, kGDStronglyConvex, kFGM };
const char* to_string(RestartMode mode);

struct RestartPlan {
  double epsilon = 1e-3;
  int p = 0;
  double gamma = 1.0;
  RestartMode mode = RestartMode::kGD;
};

/// Closed-form subgradient-call budget of the matching complexity bound.
/// Log factors below 1 count as one pass.
double predicted_calls(const RestartPlan& plan, double L, double Delta, double R2, double mu = 0.0,
                       double C = 1.0);

/// Budget inflation for fully adaptive runs: ceil(max{2L/L0, 2 Delta/Delta0}).
double inflation_factor(double L, double Delta, double L0, double Delta0);

enum class StopRule {
  /// Stop once (R2 + sum delta_hat/L) / sum(1/L) <= epsilon.
  kCertificate,
  /// Stop once the best value is within epsilon of a supplied f*.
  kTarget,
  /// Run a fixed number of iterations.
  kFixed,
};

struct RestartGDConfig {
  double epsilon = 1e-3;
  /// Smoothness constant of the (0, Delta, L)-model; steps start at 2L.
  double L = 1.0;
  double Delta = 0.0;
  /// Bound on V(x*, x0).
  double R2 = 1.0;
  /// Doubling exponent; negative means choose_p_gd.
  int p = -1;
  StopRule stop = StopRule::kCertificate;
  std::optional<double> f_star;
  int fixed_iterations = 0;
  long long max_calls = 50'000'000;
};

struct RestartIterRecord {
  int k = 0;
  double L = 0.0;
  int inner_loops = 0;
  double f = 0.0;
  double best_f = 0.0;
  double displacement = 0.0;
  double delta_hat = 0.0;
  bool small_step = false;
  bool descent = false;
};

struct RestartGDReport {
  Vector y_out;
  double f_out = 0.0;
  int p = 0;
  long long calls = 0;
  int iterations = 0;
  /// Final value of the computable bound (R2 + sum delta_hat/L) / sum(1/L).
  double certificate = 0.0;
  bool stopped = false;
  /// Iterations where neither stopping alternative held after p doublings.
  int termination_failures = 0;
  std::vector<RestartIterRecord> trace;
};

/// Restarted gradient method for exact f with a (0, Delta, L)-model: per
/// iteration up to max(1, p) prox steps with L_{k+1} = 2L, 4L, ..., stopping at
/// the first with Delta ||x^{k+1} - x^k|| <= epsilon / 2 or
/// f(x^{k+1}) <= f(x^k) + psi(x^{k+1}, x^k) + L_{k+1} V(x^{k+1}, x^k).
RestartGDReport run_restarted_gd(const ProxSetup& setup, const ModelOracle& oracle,
                                 const ExactFunction& f, const Vector& x0,
                                 const RestartGDConfig& config);

struct RestartFGMConfig {
  double epsilon = 1e-2;
  double L = 1.0;
  double Delta = 0.0;
  double R2 = 1.0;
};

struct RestartFGMReport {
  Vector x_out;
  double f_out = 0.0;
  int N = 0;
  int p = 0;
  double gamma = 0.0;
  double L_fixed = 0.0;
  long long calls = 0;
  /// Steps where neither branch of the step alternative held.
  int alternative_violations = 0;
  /// Steps where the fixed-step descent inequality failed.
  int descent_violations = 0;
  /// 8 * 2^p L R2 / (N+1)^2 + epsilon N / (2 gamma)
  double bound = 0.0;
  std::vector<double> f_trace;
};

/// Non-adaptive fast gradient method with L_{k+1} = 2^p L, artificial
/// delta = epsilon / (2 gamma), gamma = N and N = ceil(N_2) (for Delta = 0,
/// N = ceil(sqrt(8 L R2 / epsilon))). One subgradient per iteration.
RestartFGMReport run_restarted_fgm(const ProxSetup& setup, const ModelOracle& oracle,
                                   const ExactFunction& f, const Vector& x0,
                                   const RestartFGMConfig& config);

/// Iteration count of the fixed-step method (see run_restarted_fgm).
int restarted_fgm_iterations(double epsilon, double L, double Delta, double R2);

}  // namespace adaptopt
