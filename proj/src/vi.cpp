#include "adaptopt/vi.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <omp.h>

#include "adaptopt/validate.hpp"

namespace adaptopt {

VIProblem VIProblem::affine(ProxSetup setup, Matrix M, Vector q) {
  if (M.rows() != setup.dim() || M.cols() != setup.dim() || q.size() != setup.dim()) {
    throw Error("affine VI: dimension mismatch");
  }
  VIProblem p{Operator{}, std::move(setup), std::nullopt, Vector{}, Regularizer{}, true};
  p.M = std::move(M);
  p.q = std::move(q);
  const Matrix Mc = *p.M;
  const Vector qc = p.q;
  p.G = [Mc, qc](const Vector& x) -> Vector { return Mc * x + qc; };
  const Matrix sym = 0.5 * (Mc + Mc.transpose());
  p.monotone = Eigen::SelfAdjointEigenSolver<Matrix>(sym).eigenvalues().minCoeff() >=
               -1e-12 * (1.0 + Mc.norm());
  return p;
}

VIProblem VIProblem::general(ProxSetup setup, Operator G, bool monotone) {
  if (!G) throw Error("VI: empty operator");
  return VIProblem{std::move(G), std::move(setup), std::nullopt, Vector{}, Regularizer{}, monotone};
}

EquilibriumModel model_from_vi(const VIProblem& problem, double L, double Delta) {
  if (!(L > 0.0)) throw Error("model_from_vi: L must be positive");
  EquilibriumModel m;
  const Operator G = problem.G;
  const Regularizer h = problem.h;
  const int n = problem.setup.dim();
  m.at = [G, h, n](const Vector& y) {
    Vector g = G(y);
    if (g.size() != n) throw Error("VI operator: wrong output dimension");
    return LocalModel(y, std::move(g), h);
  };
  m.L = L;
  m.Delta = Delta;
  return m;
}

SaddleProblem SaddleProblem::matrix_game(Matrix A) {
  const int n1 = static_cast<int>(A.rows());
  const int n2 = static_cast<int>(A.cols());
  if (n1 < 1 || n2 < 1) throw Error("matrix game: empty payoff matrix");
  return SaddleProblem{std::move(A), ProxSetup::entropy_simplex(n1), ProxSetup::entropy_simplex(n2)};
}

ProxSetup SaddleProblem::setup() const { return ProxSetup::product({setup1, setup2}); }

VIProblem SaddleProblem::to_vi() const {
  const int n1 = static_cast<int>(A.rows());
  const int n2 = static_cast<int>(A.cols());
  Matrix M = Matrix::Zero(n1 + n2, n1 + n2);
  M.topRightCorner(n1, n2) = A;
  M.bottomLeftCorner(n2, n1) = -A.transpose();
  return VIProblem::affine(setup(), std::move(M), Vector::Zero(n1 + n2));
}

Vector project(const ProxSetup& setup, const Vector& x) {
  check_dim(setup, x, "project");
  Vector out(x.size());
  for (const auto& b : setup.blocks()) {
    const int n = b.set.dim();
    out.segment(b.offset, n) = b.set.project(x.segment(b.offset, n));
  }
  return out;
}

// -- mirror prox ---------------------------------------------------------------

MirrorProxReport run_mirror_prox(const EquilibriumModel& model, const ProxSetup& setup,
                                 const MirrorProxConfig& config) {
  if (!(config.epsilon > 0.0)) throw Error("mirror prox: epsilon must be positive");
  if (!(config.L0 > 0.0)) throw Error("mirror prox: L0 must be positive");
  if (config.Delta0 < 0.0) throw Error("mirror prox: Delta0 must be >= 0");
  if (!setup.bounded()) throw Error("mirror prox: unbounded set");

  MirrorProxReport report;
  Vector x = prox_center(setup);
  report.max_V = diameter_bound(setup, x);
  const double target = report.max_V / config.epsilon * (1.0 - 1e-12);
  double L = config.L0, Delta = config.Delta0;
  const double L_ceiling = std::ldexp(config.L0, 60);
  Vector ysum = Vector::Zero(setup.dim());
  double S = 0.0, noise = 0.0;

  for (long long k = 0; S < target; ++k) {
    if (k >= config.max_iterations) break;
    if (!config.fixed_step) {
      L /= 2.0;
      Delta /= 2.0;
    }
    const LocalModel psi_x = model.at(x);
    ++report.operator_calls;
    int loops = 0;
    while (true) {
      ++loops;
      const ProxResult ys = prox_step(setup, x, psi_x, L);
      const LocalModel psi_y = model.at(ys.point);
      ++report.operator_calls;
      const ProxResult xs = prox_step(setup, x, psi_y, L);
      const Vector& y = ys.point;
      const Vector& xn = xs.point;
      const double dist = primal_norm(setup, y - xn);
      const double lhs = psi_x(xn);
      const double rhs = psi_x(y) + psi_y(xn) + L * bregman(setup, y, x) +
                         L * bregman(setup, y, xn) + Delta * dist + model.delta;
      if (lhs <= rhs + 1e-12 * (1.0 + std::abs(lhs))) {
        MirrorProxRecord rec;
        rec.k = static_cast<int>(k);
        rec.L = L;
        rec.Delta = Delta;
        rec.inner_loops = loops;
        rec.yx_displacement = dist;
        rec.residual = std::max(ys.residual, xs.residual);
        report.delta_tilde = std::max(report.delta_tilde, rec.residual);
        S += 1.0 / L;
        rec.S = S;
        ysum += y / L;
        noise += Delta * dist / L;
        report.y_points.push_back(y);
        report.weights.push_back(1.0 / L);
        report.trace.push_back(rec);
        x = xn;
        break;
      }
      if (config.fixed_step) {
        std::ostringstream os;
        os << "mirror prox: acceptance test failed at fixed L=" << L << " (iteration " << k << ")";
        throw SolverError(os.str());
      }
      if (loops > config.inner_cap || 2.0 * L > L_ceiling) {
        std::ostringstream os;
        os << "mirror prox: doubling cap exceeded at iteration " << k << " (L=" << L
           << ", Delta=" << Delta << "); declared model likely invalid";
        throw SolverError(os.str());
      }
      L *= 2.0;
      Delta *= 2.0;
    }
  }
  report.iterations = static_cast<int>(report.trace.size());
  report.S_N = S;
  report.stopped = S >= target;
  report.y_tilde = S > 0.0 ? Vector(ysum / S) : x;
  report.noise_term = S > 0.0 ? noise / S : 0.0;
  return report;
}

double averaged_model_gap(const EquilibriumModel& model, const MirrorProxReport& report,
                          const Vector& x) {
  if (report.y_points.empty()) throw Error("averaged_model_gap: empty run");
  double s = 0.0;
  for (std::size_t k = 0; k < report.y_points.size(); ++k) {
    s += model(x, report.y_points[k]) * report.weights[k];
  }
  return -s / report.S_N;
}

// -- certificates ----------------------------------------------------------------

namespace {

void require_certifiable(const VIProblem& problem, const Vector& y) {
  check_dim(problem.setup, y, "vi_gap_certificate");
  if (problem.h.active()) throw Error("vi_gap_certificate: mixed VIs are not supported");
  for (const auto& b : problem.setup.blocks()) {
    const auto kind = b.set.kind();
    if (kind != FeasibleSet::Kind::kBox && kind != FeasibleSet::Kind::kBall &&
        kind != FeasibleSet::Kind::kSimplex) {
      throw Error(std::string("vi_gap_certificate: unsupported set kind ") + to_string(kind));
    }
  }
}

double gap_value(const VIProblem& problem, const Vector& y, const Vector& x) {
  return problem.G(x).dot(y - x);
}

GapCertificate concave_ascent(const VIProblem& problem, const Vector& y) {
  const Matrix& M = *problem.M;
  const Matrix H = M + M.transpose();
  const double curvature = Eigen::SelfAdjointEigenSolver<Matrix>(H).eigenvalues().maxCoeff();
  const double step = 1.0 / std::max(curvature, 1e-12);
  const Vector base = M.transpose() * y - problem.q;
  auto grad = [&](const Vector& x) -> Vector { return base - H * x; };
  Vector x = prox_center(problem.setup);
  double residual = optimality_residual(problem.setup, x, -grad(x));
  for (int it = 0; it < 200'000 && residual > 1e-12; ++it) {
    x = project(problem.setup, x + step * grad(x));
    residual = optimality_residual(problem.setup, x, -grad(x));
  }
  GapCertificate out;
  // Concavity: the maximum lies within `residual` of the value at x.
  out.value = gap_value(problem, y, x) + residual;
  out.resolution = residual;
  out.method = "concave-ascent";
  return out;
}

}  // namespace

namespace detail {

Vector gap_start(const VIProblem& problem, std::uint64_t seed, int index) {
  if (index == 0) return prox_center(problem.setup);
  Rng rng(hash_combine(seed, static_cast<std::uint64_t>(index)));
  return sample_point(problem.setup, rng);
}

double gap_ascent(const VIProblem& problem, const Vector& y, Vector x, int iterations) {
  const int n = static_cast<int>(x.size());
  const double h = 1e-6;
  double best = gap_value(problem, y, x);
  double fx = best;
  double step = 1.0;
  for (int it = 0; it < iterations; ++it) {
    Vector g(n);
    for (int i = 0; i < n; ++i) {
      Vector xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      g[i] = (gap_value(problem, y, xp) - gap_value(problem, y, xm)) / (2.0 * h);
    }
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      const Vector cand = project(problem.setup, x + step * g);
      const double fc = gap_value(problem, y, cand);
      if (fc > fx) {
        x = cand;
        fx = fc;
        step *= 2.0;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    best = std::max(best, fx);
    if (!moved) break;
  }
  return best;
}

}  // namespace detail

GapCertificate vi_gap_certificate(const VIProblem& problem, const Vector& y,
                                  const GapOptions& options) {
  require_certifiable(problem, y);
  if (problem.M) {
    const Matrix& M = *problem.M;
    if ((M + M.transpose()).norm() <= 1e-12 * (1.0 + M.norm())) {
      GapCertificate out;
      out.value = support(problem.setup, Vector(M.transpose() * y - problem.q)) + problem.q.dot(y);
      out.exact = true;
      out.method = "support";
      return out;
    }
    if (problem.monotone) return concave_ascent(problem, y);
  }
  if (options.starts < 1) throw Error("vi_gap_certificate: starts must be >= 1");
  std::vector<double> values(options.starts);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < options.starts; ++i) {
    values[i] = detail::gap_ascent(problem, y, detail::gap_start(problem, options.seed, i),
                                   options.iterations);
  }
  GapCertificate out;
  out.value = -std::numeric_limits<double>::infinity();
  for (double v : values) out.value = std::max(out.value, v);
  out.lower_bound = true;
  out.method = "multistart-ascent";
  return out;
}

double saddle_gap(const SaddleProblem& problem, const Vector& u, const Vector& v) {
  if (u.size() != problem.A.rows() || v.size() != problem.A.cols()) {
    throw Error("saddle_gap: dimension mismatch");
  }
  return support(problem.setup2, Vector(problem.A.transpose() * u)) +
         support(problem.setup1, Vector(-(problem.A * v)));
}

// -- model validation ----------------------------------------------------------

namespace detail {

VISample check_vi_sample(const EquilibriumModel& model, const ProxSetup& setup, std::uint64_t seed,
                         int index, double tol) {
  Rng rng(hash_combine(seed, static_cast<std::uint64_t>(index)));
  const Vector x = sample_point(setup, rng);
  const Vector y = sample_point(setup, rng);
  const Vector z = sample_point(setup, rng);
  const double t = rng.uniform();
  VISample s;

  const LocalModel at_y = model.at(y);
  const LocalModel at_x = model.at(x);
  const LocalModel at_z = model.at(z);
  if (std::abs(at_x(x)) > tol) s.identity = 1;

  const Vector mix = t * x + (1.0 - t) * z;
  if (at_y(mix) > t * at_y(x) + (1.0 - t) * at_y(z) + tol) s.convexity = 1;

  s.monotonicity_res = at_y(x) + at_x(y) - model.delta;
  if (s.monotonicity_res > tol) s.monotonicity = 1;

  const double rhs = at_z(x) + at_y(z) + model.L * bregman(setup, x, z) +
                     model.L * bregman(setup, z, y) + model.Delta * primal_norm(setup, y - z) +
                     model.delta;
  s.smoothness_res = at_y(x) - rhs;
  if (s.smoothness_res > tol) s.smoothness = 1;
  return s;
}

void accumulate(VIModelReport& report, const VISample& s) {
  ++report.samples;
  report.identity_violations += s.identity;
  report.convexity_violations += s.convexity;
  report.monotonicity_violations += s.monotonicity;
  report.smoothness_violations += s.smoothness;
  report.worst_monotonicity = std::max(report.worst_monotonicity, s.monotonicity_res);
  report.worst_smoothness = std::max(report.worst_smoothness, s.smoothness_res);
}

}  // namespace detail

VIModelReport validate_vi_model(const EquilibriumModel& model, const ProxSetup& setup, int samples,
                                std::uint64_t seed, double tol) {
  if (samples < 1) throw Error("validate_vi_model: samples must be >= 1");
  std::vector<detail::VISample> out(samples);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < samples; ++i) out[i] = detail::check_vi_sample(model, setup, seed, i, tol);
  VIModelReport report;
  for (const auto& s : out) detail::accumulate(report, s);
  return report;
}

}  // namespace adaptopt
