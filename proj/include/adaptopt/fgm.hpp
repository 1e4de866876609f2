#pragma once

// Adaptive fast gradient method for (delta, Delta, L)-models.

#include <vector>

#include "adaptopt/gd.hpp"
#include "adaptopt/model.hpp"

namespace adaptopt {

struct FGMConfig {
  double L0 = 1.0;
  double Delta0 = 0.0;
  double delta0 = 0.0;
  int N = 100;
  int inner_cap = 60;
  double slack = 1e-12;

  void check() const;
};

struct FGMIterRecord {
  int k = 0;
  double alpha = 0.0;
  double A = 0.0;
  double L = 0.0;
  double Delta = 0.0;
  double delta = 0.0;
  Vector y, u, x;
  double f = 0.0;
  int inner_loops = 0;
  /// ||x^{k+1} - y^{k+1}||
  double xy_displacement = 0.0;
  double prox_residual = 0.0;
};

struct FGMReport {
  Vector x0;
  double f0 = 0.0;
  Vector x_out;
  double f_out = 0.0;
  std::vector<FGMIterRecord> trace;
  long long oracle_calls = 0;
  double prox_residual = 0.0;
};

/// Larger root of L a^2 - a - A = 0.
double largest_root_alpha(double A, double L);

FGMReport run_adaptive_fgm(const ProxSetup& setup, const ModelOracle& oracle, const ExactFunction& f,
                           const Vector& x0, const FGMConfig& config);

/// Entry k (0..N) bounds f(x^k) - f*; entry 0 is +infinity.
std::vector<double> bound_fgm(const FGMReport& report, double R2, double delta);

/// A_k >= (k+1)^2 / (8 C L_true) for every k >= 1.
bool check_Ak_growth(const FGMReport& report, double L_true, double C);

BudgetCheck check_oracle_budget(const FGMReport& report, const FGMConfig& config, double L_true,
                                double delta_true, double Delta_true);

}  // namespace adaptopt
