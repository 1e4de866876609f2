#include <limits>

#include "adaptopt/vi.hpp"

namespace adaptopt::reference {

GapCertificate vi_gap_multistart_serial(const VIProblem& problem, const Vector& y,
                                        const GapOptions& options) {
  check_dim(problem.setup, y, "vi_gap_multistart_serial");
  if (options.starts < 1) throw Error("vi_gap_certificate: starts must be >= 1");
  GapCertificate out;
  out.value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < options.starts; ++i) {
    const double v = detail::gap_ascent(problem, y, detail::gap_start(problem, options.seed, i),
                                        options.iterations);
    out.value = std::max(out.value, v);
  }
  out.lower_bound = true;
  out.method = "multistart-ascent";
  return out;
}

VIModelReport validate_vi_model_serial(const EquilibriumModel& model, const ProxSetup& setup,
                                       int samples, std::uint64_t seed, double tol) {
  if (samples < 1) throw Error("validate_vi_model: samples must be >= 1");
  VIModelReport report;
  for (int i = 0; i < samples; ++i) {
    detail::accumulate(report, detail::check_vi_sample(model, setup, seed, i, tol));
  }
  return report;
}

}  // namespace adaptopt::reference
