#pragma once

// Config-driven experiment runs: each run writes <id>.csv and <id>.json to
// the output directory; the suite writes summary.json.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adaptopt/functional.hpp"

namespace adaptopt {

struct RunResult {
  std::string id;
  std::string method;
  bool passed = false;
  nlohmann::json report;
  /// Non-empty when the run threw; the run then counts as failed.
  std::string error;
  double wall_seconds = 0.0;
};

struct SuiteResult {
  std::vector<RunResult> runs;
  bool passed() const;
  int failed() const;
};

const std::vector<std::string>& run_methods();

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Problem from {"kind", "dim", "seed"} or {"file": path relative to base_dir}.
ProblemSpec resolve_problem(const nlohmann::json& descriptor, const std::string& base_dir);

/// Executes one run and writes its trace and report. Solver failures are
/// captured in the result; I/O failures propagate.
RunResult execute_run(const nlohmann::json& run, const std::string& base_dir,
                      const std::string& out_dir);

/// Runs execute in parallel on `jobs` threads; results keep config order.
SuiteResult run_suite(const nlohmann::json& config, const std::string& base_dir,
                      const std::string& out_dir, int jobs = 1);
SuiteResult run_suite_file(const std::string& config_path, const std::string& out_dir, int jobs = 1);

/// 0 iff every check of every run passed.
int exit_code(const SuiteResult& result);

struct CertifyResult {
  bool consistent = true;
  bool passed = false;
  std::vector<std::string> messages;
};

/// Recomputes the trace-based checks of a report from its CSV trace
/// (resolved next to the report) and compares them with the recorded ones.
CertifyResult certify_report(const std::string& report_path);

}  // namespace adaptopt
