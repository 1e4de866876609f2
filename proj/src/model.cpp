#include "adaptopt/model.hpp"

#include <cmath>

#include "adaptopt/rng.hpp"

namespace adaptopt {

namespace {

constexpr std::uint64_t kValueSalt = 0x76616c7565ULL;
constexpr std::uint64_t kGradientSalt = 0x6772616469656e74ULL;

}  // namespace

void ModelParams::check() const {
  if (!std::isfinite(delta) || !std::isfinite(Delta) || !std::isfinite(L) || !std::isfinite(mu)) {
    throw Error("model parameters must be finite");
  }
  if (delta < 0.0 || Delta < 0.0 || mu < 0.0) throw Error("model parameters must be nonnegative");
  if (!(L > 0.0)) throw Error("model parameter L must be positive");
  if (mu > L) throw Error("model parameter mu must not exceed L");
}

LocalModel standard_model(const ProblemSpec& problem, const Vector& x) {
  return LocalModel(x, problem.objective.subgradient(x));
}

Vector perturb_gradient(const Vector& g, double Delta, std::uint64_t seed, NormKind norm) {
  if (Delta < 0.0) throw Error("perturb_gradient: Delta must be nonnegative");
  if (Delta == 0.0) return g;
  Rng rng(seed);
  Vector u = rng.normal_vector(static_cast<int>(g.size()));
  // Dual norm of l2 is l2, of l1 is l-infinity.
  const double scale = norm == NormKind::kL2 ? u.norm() : u.lpNorm<Eigen::Infinity>();
  return g + (Delta / scale) * u;
}

double perturb_value(double f_val, double delta, std::uint64_t seed) {
  if (delta < 0.0) throw Error("perturb_value: delta must be nonnegative");
  if (delta == 0.0) return f_val;
  Rng rng(seed);
  return f_val - delta * rng.uniform();
}

LocalModel composite_model(const ProblemSpec& problem, const Vector& x, double Delta,
                           std::uint64_t seed, NormKind norm) {
  const Functional& f = problem.objective;
  const bool composite = f.kind() == Functional::Kind::kComposite;
  const Vector g = composite ? f.smooth_gradient(x) : f.subgradient(x);
  return LocalModel(x, perturb_gradient(g, Delta, seed, norm), f.regularizer());
}

ModelOracle make_oracle(const ProblemSpec& problem, const ProxSetup& setup, const NoiseSpec& noise,
                        const ModelParams& declared) {
  declared.check();
  if (noise.delta < 0.0 || noise.Delta < 0.0) throw Error("noise levels must be nonnegative");
  const NormKind norm = setup.is_product() ? NormKind::kL2 : setup.block().norm;
  const Functional f = problem.objective;
  std::optional<Vector> x_star;
  if (noise.orient_to_optimum && problem.optimum) x_star = problem.optimum->point;

  ModelOracle oracle;
  oracle.params = declared;
  oracle.value = [f, noise](const Vector& x) {
    return perturb_value(f.value(x), noise.delta, hash_point(noise.seed ^ kValueSalt, x));
  };
  oracle.model = [f, noise, norm, x_star](const Vector& x) {
    const bool composite = f.kind() == Functional::Kind::kComposite;
    const Vector g = composite ? f.smooth_gradient(x) : f.subgradient(x);
    Vector slope = perturb_gradient(g, noise.Delta, hash_point(noise.seed ^ kGradientSalt, x), norm);
    if (x_star && noise.Delta > 0.0) {
      const Vector e = slope - g;
      if (e.dot(*x_star - x) > 0.0) slope = g - e;
    }
    return LocalModel(x, std::move(slope), f.regularizer());
  };
  oracle.subgradient = [f](const Vector& x) { return f.subgradient(x); };
  return oracle;
}

}  // namespace adaptopt
