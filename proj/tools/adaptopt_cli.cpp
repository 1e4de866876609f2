// adaptopt run | validate | certify | generate

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adaptopt/model.hpp"
#include "adaptopt/problems.hpp"
#include "adaptopt/suite.hpp"
#include "adaptopt/validate.hpp"

namespace {

using namespace adaptopt;

std::vector<double> parse_params(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  if (out.size() != 4) throw Error("--params expects four comma-separated numbers delta,Delta,L,mu");
  return out;
}

std::string default_out() {
  const char* env = std::getenv("ADAPTOPT_OUT");
  return env && *env ? env : "adaptopt-out";
}

int cmd_run(const std::string& config, const std::string& out, int jobs) {
  const SuiteResult result = run_suite_file(config, out, jobs);
  for (const auto& r : result.runs) {
    std::printf("%-32s %-20s %s  %.3fs%s%s\n", r.id.c_str(), r.method.c_str(),
                r.passed ? "PASS" : "FAIL", r.wall_seconds, r.error.empty() ? "" : "  ",
                r.error.c_str());
  }
  std::printf("%d of %zu runs failed; outputs in %s\n", result.failed(), result.runs.size(),
              out.c_str());
  return exit_code(result);
}

int cmd_validate(const std::string& problem_path, const std::string& params, int samples,
                 std::uint64_t seed, bool strong) {
  const ProblemSpec p = problem_from_json(load_json_file(problem_path));
  const std::vector<double> v = parse_params(params);
  const ModelParams declared{v[0], v[1], v[2], v[3]};
  const ProxSetup setup = p.setup();
  const ModelOracle oracle = make_oracle(p, setup, NoiseSpec{}, declared);
  ValidationOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.definition = strong ? ModelDefinition::kStrongAtOptimum : ModelDefinition::kTwoSided;
  const ValidationReport r = validate_model(
      setup, oracle, [&](const Vector& x) { return p.objective.value(x); }, opt, p.optimum);
  nlohmann::json j = {{"samples", r.samples},
                      {"upper_violations", r.upper_violations},
                      {"lower_violations", r.lower_violations},
                      {"value_violations", r.value_violations},
                      {"strong_violations", r.strong_violations},
                      {"convexity_violations", r.convexity_violations},
                      {"identity_violations", r.identity_violations},
                      {"worst_residual", r.worst_residual},
                      {"passed", r.passed()}};
  if (r.worst) j["worst"] = {{"sample", r.worst->sample}, {"side", r.worst->side}};
  std::cout << dump_json(j);
  return r.passed() ? 0 : 1;
}

int cmd_certify(const std::string& report) {
  const CertifyResult c = certify_report(report);
  for (const auto& m : c.messages) std::printf("%s\n", m.c_str());
  std::printf("%s, %s\n", c.consistent ? "consistent" : "INCONSISTENT", c.passed ? "passed" : "failed");
  return c.consistent && c.passed ? 0 : 1;
}

int cmd_generate(const std::string& kind, int dim, std::uint64_t seed, const std::string& out) {
  const std::string text = dump_json(to_json(generate_problem(kind, dim, seed)));
  if (out.empty()) {
    std::cout << text;
  } else {
    const std::filesystem::path parent = std::filesystem::path(out).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    write_text_file(out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive first-order methods with inexact models"};
  app.require_subcommand(1);

  std::string config, out = default_out();
  int jobs = 1;
  auto* run = app.add_subcommand("run", "Execute a suite config");
  run->add_option("--config", config, "Suite config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory (default: $ADAPTOPT_OUT or ./adaptopt-out)");
  run->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);

  std::string problem, params;
  int samples = 10'000;
  std::uint64_t seed = 1;
  bool strong = false;
  auto* validate = app.add_subcommand("validate", "Check declared model parameters by sampling");
  validate->add_option("--problem", problem, "Problem spec (JSON)")->required()->check(CLI::ExistingFile);
  validate->add_option("--params", params, "delta,Delta,L,mu")->required();
  validate->add_option("--samples", samples, "Sampled pairs");
  validate->add_option("--seed", seed, "Sampling seed");
  validate->add_flag("--strong-at-optimum", strong, "Lower inequality only at the reference optimum");

  std::string report;
  auto* certify = app.add_subcommand("certify", "Recompute a report's checks from its trace");
  certify->add_option("--report", report, "Run report (JSON)")->required()->check(CLI::ExistingFile);

  std::string kind, gen_out;
  int dim = 2;
  std::uint64_t gen_seed = 0;
  auto* generate = app.add_subcommand("generate", "Write a seeded problem spec");
  generate->add_option("--kind", kind, "Problem kind")->required();
  generate->add_option("--dim", dim, "Dimension");
  generate->add_option("--seed", gen_seed, "Seed");
  generate->add_option("--out", gen_out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config, out, jobs);
    if (*validate) return cmd_validate(problem, params, samples, seed, strong);
    if (*certify) return cmd_certify(report);
    if (*generate) return cmd_generate(kind, dim, gen_seed, gen_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
