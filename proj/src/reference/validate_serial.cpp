#include "adaptopt/validate.hpp"

namespace adaptopt::reference {

ValidationReport validate_model_serial(const ProxSetup& setup, const ModelOracle& oracle,
                                       const ExactFunction& f, const ValidationOptions& options,
                                       const std::optional<ReferenceOptimum>& optimum) {
  if (options.samples < 1) throw Error("validate_model: sample_count must be >= 1");
  oracle.params.check();
  ValidationReport report;
  for (int i = 0; i < options.samples; ++i) {
    detail::accumulate(report, detail::check_sample(setup, oracle, f, options, optimum, i));
  }
  return report;
}

}  // namespace adaptopt::reference
