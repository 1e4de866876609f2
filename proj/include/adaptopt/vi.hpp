#pragma once

// Models for equilibrium problems, the adaptive proximal mirror method, and
// gap certificates for variational inequalities and saddle problems.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adaptopt/geometry.hpp"

namespace adaptopt {

using Operator = std::function<Vector(const Vector&)>;

struct VIProblem {
  Operator G;
  ProxSetup setup;
  /// G(x) = M x + q when set; enables exact certificates.
  std::optional<Matrix> M;
  Vector q;
  /// Optional separable term of a mixed VI.
  Regularizer h;
  bool monotone = true;

  static VIProblem affine(ProxSetup setup, Matrix M, Vector q);
  static VIProblem general(ProxSetup setup, Operator G, bool monotone = true);
};

/// psi_delta(x, y) = <G(y), x - y> + h(x) - h(y), exposed as the local model
/// anchored at y, with declared (delta, Delta, L) and subproblem tolerance.
struct EquilibriumModel {
  std::function<LocalModel(const Vector&)> at;
  double delta = 0.0;
  double Delta = 0.0;
  double L = 1.0;
  double delta_tilde = kInnerTol;

  double operator()(const Vector& x, const Vector& y) const { return at(y)(x); }
};

/// Exact model of a VI (delta = 0).
EquilibriumModel model_from_vi(const VIProblem& problem, double L = 1.0, double Delta = 0.0);

/// min_u max_v f(u, v) over Q1 x Q2 with bilinear f(u, v) = u'Av.
struct SaddleProblem {
  Matrix A;
  ProxSetup setup1;
  ProxSetup setup2;

  static SaddleProblem matrix_game(Matrix A);
  ProxSetup setup() const;
  /// Operator (f_u, -f_v) = (A v, -A'u) as an affine VI on Q1 x Q2.
  VIProblem to_vi() const;
  double value(const Vector& u, const Vector& v) const { return u.dot(A * v); }
};

struct MirrorProxConfig {
  double epsilon = 1e-2;
  double L0 = 1.0;
  double Delta0 = 0.0;
  int inner_cap = 60;
  long long max_iterations = 10'000'000;
  /// Keep L = L0 on every iteration (no halving or doubling); a failed
  /// acceptance test then raises SolverError.
  bool fixed_step = false;
};

struct MirrorProxRecord {
  int k = 0;
  double L = 0.0;
  double Delta = 0.0;
  int inner_loops = 0;
  double S = 0.0;
  double yx_displacement = 0.0;
  double residual = 0.0;
};

struct MirrorProxReport {
  Vector y_tilde;
  double S_N = 0.0;
  int iterations = 0;
  double max_V = 0.0;
  bool stopped = false;
  long long operator_calls = 0;
  /// Largest subproblem residual (zero for closed-form prox steps).
  double delta_tilde = 0.0;
  /// (1/S_N) sum Delta_{k+1} ||y^{k+1} - x^{k+1}|| / L_{k+1}
  double noise_term = 0.0;
  std::vector<MirrorProxRecord> trace;
  /// Iterates y^{k+1} and weights 1/L_{k+1}, kept for certificate checks.
  std::vector<Vector> y_points;
  std::vector<double> weights;
};

MirrorProxReport run_mirror_prox(const EquilibriumModel& model, const ProxSetup& setup,
                                 const MirrorProxConfig& config);

/// -(1/S_N) sum psi(x, y^{k+1}) / L_{k+1}: the left side of the averaged
/// inequality at one test point x.
double averaged_model_gap(const EquilibriumModel& model, const MirrorProxReport& report,
                          const Vector& x);

struct GapCertificate {
  double value = 0.0;
  bool exact = false;
  /// Only a lower bound on the true maximum (multi-start ascent).
  bool lower_bound = false;
  /// Optimality residual of the inner maximization (0 when closed form).
  double resolution = 0.0;
  std::string method;
};

struct GapOptions {
  int starts = 64;
  int iterations = 500;
  std::uint64_t seed = 7;
};

/// max_{x in Q} <G(x), y - x>.
GapCertificate vi_gap_certificate(const VIProblem& problem, const Vector& y,
                                  const GapOptions& options = {});

namespace reference {
GapCertificate vi_gap_multistart_serial(const VIProblem& problem, const Vector& y,
                                        const GapOptions& options = {});
}

/// max_v f(u~, v) - min_u f(u, v~).
double saddle_gap(const SaddleProblem& problem, const Vector& u, const Vector& v);

struct VIModelReport {
  int samples = 0;
  int identity_violations = 0;
  int convexity_violations = 0;
  int monotonicity_violations = 0;
  int smoothness_violations = 0;
  double worst_monotonicity = -1e300;
  double worst_smoothness = -1e300;
  bool passed() const {
    return identity_violations + convexity_violations + monotonicity_violations +
               smoothness_violations == 0;
  }
};

/// Samples pairs and triples for psi(x,x) = 0, convexity, delta-monotonicity
/// and the generalized relative smoothness inequality.
VIModelReport validate_vi_model(const EquilibriumModel& model, const ProxSetup& setup, int samples,
                                std::uint64_t seed, double tol = 1e-9);

namespace reference {
VIModelReport validate_vi_model_serial(const EquilibriumModel& model, const ProxSetup& setup,
                                       int samples, std::uint64_t seed, double tol = 1e-9);
}

/// Euclidean projection onto the feasible set of every block.
Vector project(const ProxSetup& setup, const Vector& x);

namespace detail {
struct VISample {
  int identity = 0, convexity = 0, monotonicity = 0, smoothness = 0;
  double monotonicity_res = 0.0, smoothness_res = 0.0;
};
VISample check_vi_sample(const EquilibriumModel& model, const ProxSetup& setup, std::uint64_t seed,
                         int index, double tol);
void accumulate(VIModelReport& report, const VISample& s);
/// Projected ascent on x -> <G(x), y - x> from one start.
double gap_ascent(const VIProblem& problem, const Vector& y, Vector x, int iterations);
Vector gap_start(const VIProblem& problem, std::uint64_t seed, int index);
}  // namespace detail

}  // namespace adaptopt
