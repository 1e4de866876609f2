#pragma once

// Inexact model oracles: f_delta and psi(., x) with declared (delta, Delta, L, mu).

#include <cstdint>
#include <functional>
#include <optional>

#include "adaptopt/functional.hpp"
#include "adaptopt/geometry.hpp"

namespace adaptopt {

struct ModelParams {
  double delta = 0.0;
  double Delta = 0.0;
  double L = 1.0;
  double mu = 0.0;

  /// Throws unless all finite, delta, Delta, mu >= 0, L > 0 and mu <= L.
  void check() const;
};

struct ModelOracle {
  /// f_delta(x), in [f(x) - delta, f(x)].
  std::function<double(const Vector&)> value;
  /// psi(., x) as a local model anchored at x.
  std::function<LocalModel(const Vector&)> model;
  /// Optional exact subgradient of f.
  std::function<Vector(const Vector&)> subgradient;
  ModelParams params;

  double psi(const Vector& y, const Vector& x) const { return model(x)(y); }
};

/// psi(y, x) = <grad f(x), y - x>.
LocalModel standard_model(const ProblemSpec& problem, const Vector& x);

/// psi(y, x) = <grad~ g(x), y - x> + h(y) - h(x) for f = g + h, with
/// ||grad~ g(x) - grad g(x)||_* = Delta. Non-composite objectives use h = 0.
LocalModel composite_model(const ProblemSpec& problem, const Vector& x, double Delta,
                           std::uint64_t seed, NormKind norm = NormKind::kL2);

/// g + e with ||e||_* = Delta, direction a deterministic function of seed.
Vector perturb_gradient(const Vector& g, double Delta, std::uint64_t seed,
                        NormKind norm = NormKind::kL2);

/// f_val - delta * u with u in [0, 1] drawn from seed.
double perturb_value(double f_val, double delta, std::uint64_t seed);

struct NoiseSpec {
  double delta = 0.0;
  double Delta = 0.0;
  std::uint64_t seed = 0;
  /// Flip each gradient error so that <e, x* - x> <= 0 when the problem
  /// carries a reference optimum. This keeps the lower model inequality at
  /// x* valid, which a two-sided model with e != 0 cannot satisfy.
  bool orient_to_optimum = true;
};

/// Oracle for `problem` with value noise delta and gradient noise Delta
/// injected at every query point (seeded by the point's bits).
ModelOracle make_oracle(const ProblemSpec& problem, const ProxSetup& setup, const NoiseSpec& noise,
                        const ModelParams& declared);

}  // namespace adaptopt
