#include "adaptopt/validate.hpp"

#include <cmath>
#include <vector>

#include <omp.h>

namespace adaptopt {

Vector sample_point(const ProxSetup& setup, Rng& rng) {
  Vector x(setup.dim());
  for (const auto& b : setup.blocks()) {
    const int n = b.set.dim();
    auto seg = x.segment(b.offset, n);
    switch (b.set.kind()) {
      case FeasibleSet::Kind::kWholeSpace:
        seg = rng.uniform_vector(n, -2.0, 2.0);
        break;
      case FeasibleSet::Kind::kBox:
        for (int i = 0; i < n; ++i) seg[i] = rng.uniform(b.set.lo()[i], b.set.hi()[i]);
        break;
      case FeasibleSet::Kind::kBall: {
        Vector d = rng.normal_vector(n);
        const double r = b.set.radius() * std::pow(rng.uniform(), 1.0 / n);
        seg = b.set.center() + (r / d.norm()) * d;
        break;
      }
      case FeasibleSet::Kind::kSimplex: {
        Vector e(n);
        for (int i = 0; i < n; ++i) e[i] = rng.exponential();
        seg = e / e.sum();
        break;
      }
      case FeasibleSet::Kind::kHalfspaces:
        seg = b.set.project(rng.uniform_vector(n, -2.0, 2.0));
        break;
    }
  }
  return x;
}

namespace detail {

namespace {

void consider(Violation& worst, int index, const Vector& x, const Vector& y, const char* side,
              double residual) {
  if (worst.sample < 0 || residual > worst.residual) {
    worst.sample = index;
    worst.x = x;
    worst.y = y;
    worst.side = side;
    worst.residual = residual;
  }
}

}  // namespace

SampleOutcome check_sample(const ProxSetup& setup, const ModelOracle& oracle,
                           const ExactFunction& f, const ValidationOptions& options,
                           const std::optional<ReferenceOptimum>& optimum, int index) {
  Rng rng(hash_combine(options.seed, static_cast<std::uint64_t>(index)));
  const Vector x = sample_point(setup, rng);
  const Vector y = sample_point(setup, rng);
  const Vector y2 = sample_point(setup, rng);
  const ModelParams& p = oracle.params;
  const double tol = options.tol;

  SampleOutcome out;
  const LocalModel psi = oracle.model(x);
  const double fx = f(x);
  const double fy = f(y);
  const double fdx = oracle.value(x);
  const double psi_y = psi(y);

  const double identity = std::abs(psi(x));
  consider(out.worst, index, x, x, "identity", identity);
  if (identity != 0.0) out.identity = 1;

  // f_delta(x) in [f(x) - delta, f(x)]
  const double value_res = std::max(fdx - fx, fx - p.delta - fdx);
  consider(out.worst, index, x, x, "value", value_res);
  if (value_res > tol) out.value = 1;

  const double upper = fy - (fdx + psi_y + p.delta + p.Delta * primal_norm(setup, y - x) +
                             p.L * bregman(setup, y, x));
  consider(out.worst, index, x, y, "upper", upper);
  if (upper > tol) out.upper = 1;

  if (options.definition == ModelDefinition::kTwoSided) {
    const double lower = fdx + psi_y - fy;
    consider(out.worst, index, x, y, "lower", lower);
    if (lower > tol) out.lower = 1;
  } else if (optimum) {
    const Vector& xs = optimum->point;
    const double strong = fdx + psi(xs) + p.mu * bregman(setup, xs, x) - optimum->value;
    consider(out.worst, index, x, xs, "strong", strong);
    if (strong > tol) out.strong = 1;
  }

  const Vector mid = 0.5 * (y + y2);
  const double convexity = psi(mid) - 0.5 * (psi_y + psi(y2));
  consider(out.worst, index, y, y2, "convexity", convexity);
  if (convexity > tol) out.convexity = 1;
  return out;
}

void accumulate(ValidationReport& report, const SampleOutcome& o) {
  report.samples += 1;
  report.upper_violations += o.upper;
  report.lower_violations += o.lower;
  report.value_violations += o.value;
  report.strong_violations += o.strong;
  report.convexity_violations += o.convexity;
  report.identity_violations += o.identity;
  if (!report.worst || o.worst.residual > report.worst_residual) {
    report.worst_residual = o.worst.residual;
    report.worst = o.worst;
  }
}

}  // namespace detail

ValidationReport validate_model(const ProxSetup& setup, const ModelOracle& oracle,
                                const ExactFunction& f, const ValidationOptions& options,
                                const std::optional<ReferenceOptimum>& optimum) {
  if (options.samples < 1) throw Error("validate_model: sample_count must be >= 1");
  oracle.params.check();
  std::vector<detail::SampleOutcome> outcomes(options.samples);
  const int n = options.samples;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    outcomes[i] = detail::check_sample(setup, oracle, f, options, optimum, i);
  }
  ValidationReport report;
  for (const auto& o : outcomes) detail::accumulate(report, o);
  return report;
}

}  // namespace adaptopt
