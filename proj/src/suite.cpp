#include "adaptopt/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <omp.h>

#include "adaptopt/fgm.hpp"
#include "adaptopt/gd.hpp"
#include "adaptopt/model.hpp"
#include "adaptopt/nonsmooth.hpp"
#include "adaptopt/problems.hpp"
#include "adaptopt/switching.hpp"
#include "adaptopt/trace_io.hpp"
#include "adaptopt/validate.hpp"
#include "adaptopt/vi.hpp"

namespace adaptopt {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// lhs <= rhs up to 1e-8 relative and rounding in f*.
bool within(double lhs, double rhs, double f_scale) {
  return lhs <= rhs + 1e-8 * std::abs(rhs) + 1e-12 * (1.0 + std::abs(f_scale));
}

json vec(const Vector& v) { return to_json(v); }

struct Outcome {
  Table trace;
  json result = json::object();
  json checks = json::object();
};

double f_star_of(const ProblemSpec& p) {
  if (!p.optimum) throw Error("run needs a problem with a reference optimum");
  return p.optimum->value;
}

NoiseSpec noise_of(const json& run) {
  NoiseSpec n;
  if (run.contains("noise")) {
    const json& j = run["noise"];
    n.delta = j.value("delta", 0.0);
    n.Delta = j.value("Delta", 0.0);
    n.seed = j.value("seed", std::uint64_t{0});
    n.orient_to_optimum = j.value("orient_to_optimum", true);
  }
  return n;
}

ModelParams declared_of(const json& run, const ProblemSpec& p, const NoiseSpec& noise) {
  ModelParams m;
  m.delta = noise.delta;
  m.Delta = noise.Delta > 0.0 ? noise.Delta : p.Delta;
  m.L = p.L > 0.0 ? p.L : 1.0;
  m.mu = p.mu;
  if (run.contains("declared")) {
    const json& j = run["declared"];
    m.delta = j.value("delta", m.delta);
    m.Delta = j.value("Delta", m.Delta);
    m.L = j.value("L", m.L);
    m.mu = j.value("mu", m.mu);
  }
  return m;
}

Vector start_of(const json& s, const ProxSetup& setup) {
  if (s.contains("x0")) return vector_from_json(s["x0"]);
  return prox_center(setup);
}

Outcome run_gd(const ProblemSpec& p, const json& run) {
  const json s = run.value("solver", json::object());
  const ProxSetup setup = p.setup();
  const NoiseSpec noise = noise_of(run);
  const ModelParams declared = declared_of(run, p, noise);
  const ModelOracle oracle = make_oracle(p, setup, noise, declared);
  const ExactFunction f = [&](const Vector& x) { return p.objective.value(x); };
  GDConfig c;
  c.L0 = s.value("L0", declared.L);
  c.Delta0 = s.value("Delta0", noise.Delta);
  c.delta0 = s.value("delta0", noise.delta);
  c.mu = s.value("mu", 0.0);
  c.N = s.value("N", 200);
  const Vector x0 = start_of(s, setup);
  const GDReport r = run_adaptive_gd(setup, oracle, f, x0, c);
  const double fs = f_star_of(p);
  const double R2 = bregman(setup, p.optimum->point, x0);
  const BoundTerms b = bound_th03(r.trace, R2, noise.delta, c.mu);
  bool ok = true;
  for (std::size_t k = 0; k < r.trace.size(); ++k) ok = ok && within(r.trace[k].best_f - fs, b.rhs[k], fs);
  const BudgetCheck budget = check_oracle_budget(r, c, declared.L, noise.delta, noise.Delta);
  Outcome o;
  o.trace = gd_table(r, b.rhs);
  o.result = {{"f_star", fs},          {"f_out", r.f_out},         {"R2", R2},
              {"iterations", r.trace.size()}, {"oracle_calls", r.oracle_calls},
              {"budget_allowance", budget.allowance}, {"max_L_ratio", budget.max_L_ratio},
              {"final_bound", b.rhs.empty() ? 0.0 : b.rhs.back()}};
  o.checks = {{"bound", ok}, {"budget", budget.ok}};
  return o;
}

Outcome run_fgm(const ProblemSpec& p, const json& run) {
  const json s = run.value("solver", json::object());
  const ProxSetup setup = p.setup();
  const NoiseSpec noise = noise_of(run);
  const ModelParams declared = declared_of(run, p, noise);
  const ModelOracle oracle = make_oracle(p, setup, noise, declared);
  const ExactFunction f = [&](const Vector& x) { return p.objective.value(x); };
  FGMConfig c;
  c.L0 = s.value("L0", declared.L);
  c.Delta0 = s.value("Delta0", noise.Delta);
  c.delta0 = s.value("delta0", noise.delta);
  c.N = s.value("N", 200);
  const Vector x0 = start_of(s, setup);
  const FGMReport r = run_adaptive_fgm(setup, oracle, f, x0, c);
  const double fs = f_star_of(p);
  const double R2 = bregman(setup, p.optimum->point, x0);
  const std::vector<double> b = bound_fgm(r, R2, noise.delta);
  bool ok = true;
  for (std::size_t k = 0; k < r.trace.size(); ++k) ok = ok && within(r.trace[k].f - fs, b[k + 1], fs);
  const double C = budget_constant(c.delta0, c.Delta0, noise.delta, noise.Delta);
  const BudgetCheck budget = check_oracle_budget(r, c, declared.L, noise.delta, noise.Delta);
  Outcome o;
  o.trace = fgm_table(r, b);
  o.result = {{"f_star", fs},          {"f_out", r.f_out},          {"R2", R2},
              {"iterations", r.trace.size()}, {"oracle_calls", r.oracle_calls},
              {"budget_allowance", budget.allowance}, {"C", C}};
  o.checks = {{"bound", ok}, {"budget", budget.ok}, {"Ak_growth", check_Ak_growth(r, declared.L, C)}};
  return o;
}

Outcome run_restart(const ProblemSpec& p, const json& run, bool fast) {
  const json s = run.value("solver", json::object());
  const ProxSetup setup = p.setup();
  const ModelParams declared = declared_of(run, p, NoiseSpec{});
  const ModelOracle oracle = make_oracle(p, setup, NoiseSpec{}, declared);
  const ExactFunction f = [&](const Vector& x) { return p.objective.value(x); };
  const double eps = s.value("epsilon", 1e-3);
  const Vector x0 = start_of(s, setup);
  const double fs = f_star_of(p);
  const double R2 = bregman(setup, p.optimum->point, x0);
  const double L = s.value("L", declared.L);
  const double Delta = s.value("Delta", declared.Delta);
  Outcome o;
  if (!fast) {
    RestartGDConfig c;
    c.epsilon = eps;
    c.L = L;
    c.Delta = Delta;
    c.R2 = R2;
    const RestartGDReport r = run_restarted_gd(setup, oracle, f, x0, c);
    const double predicted = predicted_calls(RestartPlan{eps, r.p, 1.0, RestartMode::kGD}, L, Delta, R2);
    o.trace = restart_gd_table(r);
    o.result = {{"f_star", fs},         {"f_out", r.f_out},       {"epsilon", eps},
                {"p", r.p},             {"calls", r.calls},       {"predicted_calls", predicted},
                {"iterations", r.iterations}, {"certificate", r.certificate},
                {"termination_failures", r.termination_failures}, {"R2", R2}};
    o.checks = {{"stopped", r.stopped},
                {"f_gap", r.f_out - fs <= eps},
                {"calls_within_prediction", static_cast<double>(r.calls) <= predicted}};
  } else {
    RestartFGMConfig c;
    c.epsilon = eps;
    c.L = L;
    c.Delta = Delta;
    c.R2 = R2;
    const RestartFGMReport r = run_restarted_fgm(setup, oracle, f, x0, c);
    const double predicted =
        predicted_calls(RestartPlan{eps, r.p, r.gamma, RestartMode::kFGM}, L, Delta, R2);
    o.trace = restart_fgm_table(r);
    o.result = {{"f_star", fs},       {"f_out", r.f_out},     {"epsilon", eps},
                {"p", r.p},           {"N", r.N},             {"gamma", r.gamma},
                {"calls", r.calls},   {"predicted_calls", predicted},
                {"bound", r.bound},   {"alternative_violations", r.alternative_violations},
                {"descent_violations", r.descent_violations}, {"R2", R2}};
    o.checks = {{"f_gap", r.f_out - fs <= eps},
                {"calls_within_prediction", static_cast<double>(r.calls) <= predicted}};
  }
  return o;
}

Outcome run_mirror(const ProblemSpec& p, const json& run) {
  if (!p.game) throw Error("mirror-prox runs need a matrix-game problem");
  const json s = run.value("solver", json::object());
  const SaddleProblem game = SaddleProblem::matrix_game(*p.game);
  const VIProblem vi = game.to_vi();
  const EquilibriumModel model = model_from_vi(vi, p.L > 0.0 ? p.L : 1.0);
  MirrorProxConfig c;
  c.epsilon = s.value("epsilon", 1e-2);
  c.L0 = s.value("L0", 1.0);
  const MirrorProxReport r = run_mirror_prox(model, game.setup(), c);
  const int n1 = static_cast<int>(p.game->rows());
  const Vector u = r.y_tilde.head(n1);
  const Vector v = r.y_tilde.tail(p.game->cols());
  const double gap = saddle_gap(game, u, v);
  const GapCertificate cert = vi_gap_certificate(vi, r.y_tilde);
  const double allowed = c.epsilon + 2.0 * r.delta_tilde + model.delta + r.noise_term;
  Outcome o;
  o.trace = mirror_prox_table(r);
  o.result = {{"S_N", r.S_N},         {"iterations", r.iterations},   {"eps", c.epsilon},
              {"delta_tilde", r.delta_tilde}, {"max_V", r.max_V},   {"saddle_gap", gap},
              {"gap_certificate", cert.value}, {"operator_calls", r.operator_calls},
              {"game_value", p.optimum ? p.optimum->value : 0.0},
              {"y_tilde", vec(r.y_tilde)}};
  o.checks = {{"stopped", r.stopped},
              {"saddle_gap", gap <= allowed + 1e-9},
              {"vi_gap", cert.value <= allowed + 1e-9}};
  return o;
}

Outcome run_switch(const ProblemSpec& p, const json& run, SwitchVariant variant) {
  const json s = run.value("solver", json::object());
  const ProxSetup setup = p.setup();
  SwitchConfig c;
  c.variant = variant;
  c.epsilon = s.value("epsilon", 1e-2);
  c.Theta0_sq = s.value("Theta0_sq", 1.0);
  c.omega = s.value("omega", 1.0);
  c.M_f = s.value("M_f", p.M_f);
  c.M_g = s.value("M_g", p.M_g);
  c.N_max = s.value("N_max", 10'000'000LL);
  const SwitchReport r = run_switching(p, setup, c);
  const double fs = f_star_of(p);
  const double f_allow = variant == SwitchVariant::kAlg5Omega ? c.omega * c.omega * c.epsilon : c.epsilon;
  const long long bound = switching_iteration_bound(c.Theta0_sq, c.M_f, c.epsilon);
  Outcome o;
  o.trace = switch_table(r);
  o.result = {{"f_star", fs},         {"f_hat", r.f_hat},        {"g_hat", r.g_hat},
              {"epsilon", c.epsilon}, {"I", r.productive},       {"J", r.unproductive},
              {"iterations", r.iterations}, {"N_bound", bound},  {"x_hat", vec(r.x_hat)}};
  const bool f_ok = r.f_hat - fs <= f_allow + 1e-9;
  o.checks = {{"stopped", r.stopped},
              {"g_bound", r.g_hat <= c.epsilon * c.M_g + 1e-9},
              {"stop_by_bound", r.iterations <= bound}};
  if (variant == SwitchVariant::kAlg5Omega) {
    const bool escape = escape_occurred(r, setup, p.optimum->point);
    o.result["escape"] = escape;
    o.checks["f_gap_or_escape"] = f_ok || escape;
  } else {
    o.checks["f_gap"] = f_ok;
  }
  const bool dual_available = setup.bounded() && p.objective.is_affine() && r.h_sum_productive > 0.0 &&
                              std::all_of(p.constraints.begin(), p.constraints.end(),
                                          [](const Functional& g) { return g.is_affine(); });
  if (dual_available) {
    const DualCertificate d = dual_certificate(p, setup, r);
    o.result["lambda_hat"] = vec(d.lambda_hat);
    o.result["dual_value"] = d.dual_value;
    o.result["dual_gap"] = d.gap;
    o.checks["dual_gap"] = d.gap >= -1e-9 && d.gap <= c.epsilon + 1e-9;
  }
  return o;
}

Outcome run_relative(const ProblemSpec& p, const json& run) {
  const json s = run.value("solver", json::object());
  const ProxSetup setup = p.setup();
  RelativeAccuracyConfig c;
  c.delta_rel = s.value("delta_rel", 0.1);
  c.gamma0 = s.value("gamma0", 1.0);
  c.gamma1 = s.value("gamma1", 1.0);
  c.Theta0_sq = s.value("Theta0_sq", 2.0);
  c.M_f = s.value("M_f", p.M_f > 0.0 ? p.M_f : 1.0);
  c.M_g = s.value("M_g", p.M_g > 0.0 ? p.M_g : 1.0);
  const RelativeAccuracyReport r = relative_accuracy_run(p, setup, c);
  const double fs = f_star_of(p);
  const HomogeneityReport h =
      homogeneity_probe(p.objective, c.gamma0, c.gamma1, p.optimum->point, *p.optimum, 1000,
                        s.value("probe_seed", std::uint64_t{5}));
  Outcome o;
  o.trace = switch_table(r.run);
  o.result = {{"f_star", fs},          {"f_hat", r.run.f_hat},   {"g_hat", r.run.g_hat},
              {"N", r.N},              {"epsilon", r.epsilon},   {"inflated", r.inflated},
              {"inflated_count", r.inflated_count}, {"budget", r.budget},
              {"iterations", r.run.iterations},     {"rel_error_bound", r.rel_error_bound},
              {"x_hat", vec(r.run.x_hat)}};
  o.checks = {{"stopped", r.run.stopped},
              {"relative_accuracy", r.run.f_hat <= (1.0 + c.delta_rel) * fs + 1e-12},
              {"g_bound", r.run.g_hat <= r.constraint_bound + 1e-12},
              {"homogeneity", h.passed()}};
  return o;
}

Outcome run_validate(const ProblemSpec& p, const json& run) {
  const json s = run.value("solver", json::object());
  const ProxSetup setup = p.setup();
  const NoiseSpec noise = noise_of(run);
  const ModelParams declared = declared_of(run, p, noise);
  const ModelOracle oracle = make_oracle(p, setup, noise, declared);
  ValidationOptions opt;
  opt.samples = s.value("samples", 10'000);
  opt.seed = s.value("seed", std::uint64_t{1});
  opt.definition = s.value("definition", std::string("two-sided")) == "strong-at-optimum"
                       ? ModelDefinition::kStrongAtOptimum
                       : ModelDefinition::kTwoSided;
  const ExactFunction f = [&](const Vector& x) { return p.objective.value(x); };
  const ValidationReport r = validate_model(setup, oracle, f, opt, p.optimum);
  Outcome o;
  o.trace.columns = {"samples", "upper", "lower", "value", "strong", "convexity", "identity",
                     "worst_residual"};
  o.trace.rows.push_back({double(r.samples), double(r.upper_violations), double(r.lower_violations),
                          double(r.value_violations), double(r.strong_violations),
                          double(r.convexity_violations), double(r.identity_violations),
                          r.worst_residual});
  o.result = {{"declared", {{"delta", declared.delta}, {"Delta", declared.Delta}, {"L", declared.L},
                            {"mu", declared.mu}}},
              {"violations", r.total_violations()},
              {"worst_residual", r.worst_residual}};
  if (r.worst) {
    o.result["worst"] = {{"sample", r.worst->sample}, {"side", r.worst->side},
                         {"x", vec(r.worst->x)}, {"y", vec(r.worst->y)}};
  }
  o.checks = {{"model_valid", r.passed()}};
  return o;
}

Outcome dispatch(const std::string& method, const ProblemSpec& p, const json& run) {
  if (method == "gd") return run_gd(p, run);
  if (method == "fgm") return run_fgm(p, run);
  if (method == "restarted-gd") return run_restart(p, run, false);
  if (method == "restarted-fgm") return run_restart(p, run, true);
  if (method == "mirror-prox") return run_mirror(p, run);
  if (method == "alg4") return run_switch(p, run, SwitchVariant::kAlg4);
  if (method == "alg5-omega") return run_switch(p, run, SwitchVariant::kAlg5Omega);
  if (method == "alg5-rel-lipschitz") return run_switch(p, run, SwitchVariant::kAlg5RelLipschitz);
  if (method == "relative-accuracy") return run_relative(p, run);
  if (method == "validate") return run_validate(p, run);
  throw Error("unknown method '" + method + "'");
}

bool all_true(const json& checks) {
  for (const auto& [name, value] : checks.items()) {
    if (!value.get<bool>()) return false;
  }
  return true;
}

}  // namespace

bool SuiteResult::passed() const { return failed() == 0; }

int SuiteResult::failed() const {
  int n = 0;
  for (const auto& r : runs) n += r.passed ? 0 : 1;
  return n;
}

const std::vector<std::string>& run_methods() {
  static const std::vector<std::string> methods = {
      "gd",   "fgm",        "restarted-gd",       "restarted-fgm",     "mirror-prox",
      "alg4", "alg5-omega", "alg5-rel-lipschitz", "relative-accuracy", "validate"};
  return methods;
}

json load_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw Error("cannot parse '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw Error("write failed for '" + path + "'");
}

ProblemSpec resolve_problem(const json& d, const std::string& base_dir) {
  if (d.contains("file")) {
    const fs::path path = fs::path(base_dir) / d["file"].get<std::string>();
    return problem_from_json(load_json_file(path.string()));
  }
  return generate_problem(d.at("kind").get<std::string>(), d.at("dim").get<int>(),
                          d.at("seed").get<std::uint64_t>());
}

RunResult execute_run(const json& run, const std::string& base_dir, const std::string& out_dir) {
  RunResult result;
  result.id = run.at("id").get<std::string>();
  result.method = run.at("method").get<std::string>();
  const auto start = std::chrono::steady_clock::now();
  json report;
  report["id"] = result.id;
  report["method"] = result.method;
  report["config"] = run;
  report["trace"] = result.id + ".csv";
  Table trace;
  try {
    const ProblemSpec p = resolve_problem(run.at("problem"), base_dir);
    Outcome o = dispatch(result.method, p, run);
    report["problem"] = {{"kind", p.kind}, {"dim", p.dim()}, {"seed", p.seed}};
    report["result"] = o.result;
    report["checks"] = o.checks;
    result.passed = all_true(o.checks);
    trace = std::move(o.trace);
  } catch (const Error& e) {
    result.error = e.what();
    result.passed = false;
    report["error"] = result.error;
    report["checks"] = json::object();
  }
  report["passed"] = result.passed;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_csv(trace, (fs::path(out_dir) / (result.id + ".csv")).string());
  write_text_file((fs::path(out_dir) / (result.id + ".json")).string(), dump_json(report));
  result.report = std::move(report);
  return result;
}

SuiteResult run_suite(const json& config, const std::string& base_dir, const std::string& out_dir,
                      int jobs) {
  if (!config.contains("runs") || !config["runs"].is_array()) {
    throw Error("suite config needs a 'runs' array");
  }
  const json& runs = config["runs"];
  std::vector<std::string> ids;
  for (const auto& r : runs) {
    const std::string id = r.at("id").get<std::string>();
    if (id.empty() || id.find_first_of("/\\") != std::string::npos) {
      throw Error("run id '" + id + "' is not a plain file name");
    }
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) throw Error("duplicate run id '" + id + "'");
    ids.push_back(id);
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory '" + out_dir + "': " + ec.message());

  SuiteResult out;
  out.runs.resize(runs.size());
  std::vector<std::string> io_errors(runs.size());
  const int n = static_cast<int>(runs.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
  for (int i = 0; i < n; ++i) {
    try {
      out.runs[i] = execute_run(runs[i], base_dir, out_dir);
    } catch (const std::exception& e) {
      io_errors[i] = e.what();
    }
  }
  for (const auto& e : io_errors) {
    if (!e.empty()) throw Error(e);
  }
  json summary;
  summary["runs"] = json::array();
  for (const auto& r : out.runs) {
    summary["runs"].push_back({{"id", r.id}, {"method", r.method}, {"passed", r.passed}});
  }
  summary["failed"] = out.failed();
  summary["passed"] = out.passed();
  write_text_file((fs::path(out_dir) / "summary.json").string(), dump_json(summary));
  return out;
}

SuiteResult run_suite_file(const std::string& config_path, const std::string& out_dir, int jobs) {
  const json config = load_json_file(config_path);
  const std::string base = fs::path(config_path).parent_path().string();
  return run_suite(config, base.empty() ? "." : base, out_dir, jobs);
}

int exit_code(const SuiteResult& result) { return result.passed() ? 0 : 1; }

// -- certification ---------------------------------------------------------------

namespace {

int column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return static_cast<int>(i);
  }
  throw Error("trace has no column '" + name + "'");
}

/// Checks recomputable from the trace alone.
json recompute(const std::string& method, const Table& t, const json& result) {
  json out = json::object();
  auto col = [&](const char* name) { return column(t, name); };
  if (method == "gd" || method == "fgm") {
    const double fs = result.at("f_star").get<double>();
    const int fc = method == "gd" ? col("best_f") : col("f");
    const int bc = col("bound");
    bool ok = true;
    for (const auto& row : t.rows) ok = ok && within(row[fc] - fs, row[bc], fs);
    out["bound"] = ok;
  } else if (method == "restarted-gd") {
    const double fs = result.at("f_star").get<double>();
    double calls = 0.0;
    for (const auto& row : t.rows) calls += row[col("inner_loops")];
    const double best = t.rows.empty() ? HUGE_VAL : t.rows.back()[col("best_f")];
    out["f_gap"] = best - fs <= result.at("epsilon").get<double>();
    out["calls_within_prediction"] = calls <= result.at("predicted_calls").get<double>();
  } else if (method == "restarted-fgm") {
    const double fs = result.at("f_star").get<double>();
    const double last = t.rows.empty() ? HUGE_VAL : t.rows.back()[col("f")];
    out["f_gap"] = last - fs <= result.at("epsilon").get<double>();
    out["calls_within_prediction"] =
        static_cast<double>(t.rows.size()) <= result.at("predicted_calls").get<double>();
  } else if (method == "mirror-prox") {
    const double S = t.rows.empty() ? 0.0 : t.rows.back()[col("S")];
    out["stopped"] = S >= result.at("max_V").get<double>() / result.at("eps").get<double>() * (1.0 - 1e-12);
  } else if (method == "alg4" || method == "alg5-omega" || method == "alg5-rel-lipschitz" ||
             method == "relative-accuracy") {
    bool stopped = false;
    if (!t.rows.empty()) {
      const auto& last = t.rows.back();
      stopped = last[col("running_stop_lhs")] >= last[col("running_stop_rhs")] * (1.0 - 1e-12);
    }
    if (method != "relative-accuracy") {
      out["stop_by_bound"] = static_cast<long long>(t.rows.size()) <= result.at("N_bound").get<long long>();
    }
    out["stopped"] = stopped || (!t.rows.empty() && t.rows.back()[col("dualnorm")] == 0.0);
  } else if (method == "validate") {
    bool clean = !t.rows.empty();
    for (const auto& row : t.rows) {
      for (const char* c : {"upper", "lower", "value", "strong", "convexity", "identity"}) {
        clean = clean && row[col(c)] == 0.0;
      }
    }
    out["model_valid"] = clean;
  }
  return out;
}

}  // namespace

CertifyResult certify_report(const std::string& report_path) {
  CertifyResult out;
  const json report = load_json_file(report_path);
  if (report.contains("error")) {
    out.messages.push_back("run failed: " + report["error"].get<std::string>());
    out.passed = false;
    return out;
  }
  const fs::path trace_path = fs::path(report_path).parent_path() / report.at("trace").get<std::string>();
  const Table t = read_csv(trace_path.string());
  const json recomputed = recompute(report.at("method").get<std::string>(), t, report.at("result"));
  const json& checks = report.at("checks");
  for (const auto& [name, value] : recomputed.items()) {
    if (!checks.contains(name)) {
      out.consistent = false;
      out.messages.push_back("check '" + name + "' missing from report");
    } else if (checks[name].get<bool>() != value.get<bool>()) {
      out.consistent = false;
      out.messages.push_back("check '" + name + "' recorded as " +
                             (checks[name].get<bool>() ? "pass" : "fail") + " but trace gives " +
                             (value.get<bool>() ? "pass" : "fail"));
    } else {
      out.messages.push_back("check '" + name + "' confirmed: " + (value.get<bool>() ? "pass" : "fail"));
    }
  }
  out.passed = report.at("passed").get<bool>();
  return out;
}

}  // namespace adaptopt
