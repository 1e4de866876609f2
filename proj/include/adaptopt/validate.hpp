#pragma once

// Sampling checks of declared model parameters. The OpenMP kernel and the
// serial reference in adaptopt::reference produce identical reports.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "adaptopt/functional.hpp"
#include "adaptopt/model.hpp"
#include "adaptopt/rng.hpp"

namespace adaptopt {

/// Random feasible point: uniform on boxes and balls, Dirichlet(1) on the
/// simplex, uniform on [-2, 2]^n for whole-space, projected for halfspaces.
Vector sample_point(const ProxSetup& setup, Rng& rng);

enum class ModelDefinition {
  /// Both sides of the plain model inequality for every sampled pair.
  kTwoSided,
  /// Upper inequality for every pair plus the mu-lower inequality at x*.
  kStrongAtOptimum,
};

struct ValidationOptions {
  int samples = 10'000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  ModelDefinition definition = ModelDefinition::kTwoSided;
};

struct Violation {
  int sample = -1;
  Vector x;
  Vector y;
  std::string side;
  double residual = 0.0;
};

struct ValidationReport {
  int samples = 0;
  int upper_violations = 0;
  int lower_violations = 0;
  int value_violations = 0;
  int strong_violations = 0;
  int convexity_violations = 0;
  int identity_violations = 0;
  /// Largest residual over all checks (<= tol means pass).
  double worst_residual = -1e300;
  std::optional<Violation> worst;

  int total_violations() const {
    return upper_violations + lower_violations + value_violations + strong_violations +
           convexity_violations + identity_violations;
  }
  bool passed() const { return total_violations() == 0; }
};

/// Exact reference function f for the oracle.
using ExactFunction = std::function<double(const Vector&)>;

ValidationReport validate_model(const ProxSetup& setup, const ModelOracle& oracle,
                                const ExactFunction& f, const ValidationOptions& options,
                                const std::optional<ReferenceOptimum>& optimum = std::nullopt);

namespace reference {
ValidationReport validate_model_serial(const ProxSetup& setup, const ModelOracle& oracle,
                                       const ExactFunction& f, const ValidationOptions& options,
                                       const std::optional<ReferenceOptimum>& optimum = std::nullopt);
}  // namespace reference

namespace detail {

/// Checks for one sample; shared by both validation kernels.
struct SampleOutcome {
  int upper = 0, lower = 0, value = 0, strong = 0, convexity = 0, identity = 0;
  Violation worst;
};

SampleOutcome check_sample(const ProxSetup& setup, const ModelOracle& oracle,
                           const ExactFunction& f, const ValidationOptions& options,
                           const std::optional<ReferenceOptimum>& optimum, int index);

/// Folds one outcome into the report; ties keep the earlier sample.
void accumulate(ValidationReport& report, const SampleOutcome& outcome);

}  // namespace detail

}  // namespace adaptopt
