#pragma once

// Adaptive gradient method for (delta, Delta, L, mu)-models with joint
// halving/doubling of (L, Delta, delta), and its convergence bound.

#include <vector>

#include "adaptopt/model.hpp"
#include "adaptopt/validate.hpp"

namespace adaptopt {

/// Positive parameters are never halved below this floor.
inline constexpr double kParameterFloor = 1e-18;

struct GDConfig {
  double L0 = 1.0;
  double Delta0 = 0.0;
  double delta0 = 0.0;
  double mu = 0.0;
  int N = 100;
  /// Maximum doublings inside one iteration.
  int inner_cap = 60;
  /// Acceptance slack is slack * (1 + |f_delta(x^k)|).
  double slack = 1e-12;

  void check() const;
};

struct GDIterRecord {
  int k = 0;
  double L = 0.0;
  double Delta = 0.0;
  double delta = 0.0;
  Vector x;
  double f = 0.0;
  double best_f = 0.0;
  int inner_loops = 0;
  double displacement = 0.0;
  /// delta_{k+1} + Delta_{k+1} ||x^{k+1} - x^k||
  double delta_hat = 0.0;
};

struct GDReport {
  Vector x0;
  double f0 = 0.0;
  Vector y_out;
  double f_out = 0.0;
  int best_index = -1;
  std::vector<GDIterRecord> trace;
  long long oracle_calls = 0;
  /// Largest prox residual reported by the subproblem solver.
  double prox_residual = 0.0;
};

/// Runs config.N iterations from x0. Throws SolverError when one iteration
/// needs more than inner_cap doublings or L exceeds 2^60 * L0.
GDReport run_adaptive_gd(const ProxSetup& setup, const ModelOracle& oracle, const ExactFunction& f,
                         const Vector& x0, const GDConfig& config);

struct BoundTerms {
  /// Full right-hand side for each k.
  std::vector<double> rhs;
  /// prod_{i<=k} (1 - mu / L_{i+1})
  std::vector<double> mu_product;
  /// sum_i (1 / L_{i+1}) prod_{j=i+2}^{k+1} (1 - mu / L_j)
  std::vector<double> weight_sum;
  /// sum_i ((delta + delta_hat_{i+1}) / L_{i+1}) prod_{j=i+2}^{k+1} (1 - mu / L_j)
  std::vector<double> noise_sum;
};

/// Right-hand side of the convergence bound after k + 1 steps for every k.
/// R2 bounds V(x*, x0), delta is the true model delta.
BoundTerms bound_th03(const std::vector<GDIterRecord>& trace, double R2, double delta, double mu);

struct BudgetCheck {
  bool ok = false;
  long long used = 0;
  double allowance = 0.0;
  double slack = 0.0;
  /// max accepted L over 2 C L_true; <= 1 when the L invariant holds.
  double max_L_ratio = 0.0;
};

/// Allowance 2k + max{log2(2L/L0), log2(2 delta/delta0), log2(2 Delta/Delta0)},
/// a term counting 0 when its true constant is 0.
double budget_allowance(int k, double L0, double delta0, double Delta0, double L_true,
                        double delta_true, double Delta_true);
/// C = max{1, 2 delta/delta0, 2 Delta/Delta0} (terms with zero truth skipped).
double budget_constant(double delta0, double Delta0, double delta_true, double Delta_true);

BudgetCheck check_oracle_budget(const GDReport& report, const GDConfig& config, double L_true,
                                double delta_true, double Delta_true);

}  // namespace adaptopt
