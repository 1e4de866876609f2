// End-to-end acceptance checks; prints one [PASS]/[FAIL] line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "adaptopt/fgm.hpp"
#include "adaptopt/gd.hpp"
#include "adaptopt/lp.hpp"
#include "adaptopt/nonsmooth.hpp"
#include "adaptopt/problems.hpp"
#include "adaptopt/suite.hpp"
#include "adaptopt/switching.hpp"
#include "adaptopt/validate.hpp"
#include "adaptopt/vi.hpp"

using namespace adaptopt;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

ExactFunction objective(const ProblemSpec& p) {
  return [p](const Vector& x) { return p.objective.value(x); };
}

// -- 1 ----------------------------------------------------------------------

Verdict model_validation() {
  Verdict v;
  ValidationOptions opt;
  opt.samples = 10'000;

  const ProblemSpec q = generate_problem("quadratic", 10, 7);
  const double lmax = Eigen::SelfAdjointEigenSolver<Matrix>(q.objective.Q()).eigenvalues().maxCoeff();
  {
    const ProxSetup s = q.setup();
    const ValidationReport r =
        validate_model(s, make_oracle(q, s, NoiseSpec{}, ModelParams{0, 0, lmax, 0}), objective(q), opt, q.optimum);
    v.require(r.passed(), fmt("quadratic with L=lambda_max: %g violations", r.total_violations()));
  }
  const ProblemSpec a = generate_problem("abs", 1, 0);
  const ProxSetup s = a.setup();
  for (double L : {1e-2, 1e-1, 1.0, 10.0, 1e3}) {
    const ValidationReport r =
        validate_model(s, make_oracle(a, s, NoiseSpec{}, ModelParams{0, 2, L, 0}), objective(a), opt);
    v.require(r.passed(), fmt("|x| with (0,2,%g): %g violations", L, r.total_violations()));
  }
  const ValidationReport bad =
      validate_model(s, make_oracle(a, s, NoiseSpec{}, ModelParams{0, 0, 1e-2, 0}), objective(a), opt);
  v.require(!bad.passed(), "|x| with Delta=0 was not rejected");
  v.detail = v.ok ? fmt("lambda_max=%.6g; |x| Delta=0 rejected with %g violations", lmax, bad.total_violations())
                  : v.detail;
  return v;
}

// -- 2, 3, 4 ---------------------------------------------------------------------

struct NoiseCase {
  double delta, Delta;
};
const std::vector<NoiseCase> kNoise = {{0, 0}, {0, 0.1}, {0.01, 0}, {0.01, 0.1}};

struct GDCase {
  NoiseCase noise;
  double mu;
  double L0;
};

GDReport gd_run(const ProblemSpec& p, const GDCase& c, GDConfig& cfg, ProxSetup& setup) {
  setup = p.setup();
  NoiseSpec n;
  n.delta = c.noise.delta;
  n.Delta = c.noise.Delta;
  n.seed = 3;
  const ModelOracle o = make_oracle(p, setup, n, ModelParams{n.delta, n.Delta, p.L, c.mu});
  cfg.L0 = c.L0;
  cfg.Delta0 = n.Delta;
  cfg.delta0 = n.delta;
  cfg.mu = c.mu;
  cfg.N = 200;
  return run_adaptive_gd(setup, o, objective(p), Vector::Zero(p.dim()), cfg);
}

std::vector<GDCase> gd_cases() {
  std::vector<GDCase> out;
  for (const auto& n : kNoise) {
    for (double L0 : {1.0, 20.0}) out.push_back({n, 0.0, L0});
    out.push_back({n, 0.1, 10.0});
  }
  return out;
}

Verdict theorem_bound() {
  Verdict v;
  const ProblemSpec p = generate_problem("quadratic", 10, 7);
  const double fs = p.optimum->value;
  double worst_ratio = -HUGE_VAL, worst_product = 0.0;
  int runs = 0;
  for (const auto& c : gd_cases()) {
    GDConfig cfg;
    ProxSetup setup = p.setup();
    const GDReport r = gd_run(p, c, cfg, setup);
    const double R2 = bregman(setup, p.optimum->point, r.x0);
    const BoundTerms b = bound_th03(r.trace, R2, c.noise.delta, c.mu);
    ++runs;
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      const double gap = r.trace[k].best_f - fs;
      worst_ratio = std::max(worst_ratio, gap / b.rhs[k]);
      if (!(gap <= b.rhs[k] * (1.0 + 1e-8))) {
        v.require(false, fmt("bound violated at k=%g (delta=%g Delta=%g mu=%g)", double(k), c.noise.delta,
                             c.noise.Delta, c.mu));
        break;
      }
    }
    if (c.mu > 0.0) {
      double P = 1.0;
      for (std::size_t k = 0; k < r.trace.size(); ++k) {
        P *= 1.0 - c.mu / r.trace[k].L;
        worst_product = std::max(worst_product, std::abs(P - b.mu_product[k]));
        // Geometric contraction of the bound relative to its k=0 value.
        const double expected = P * R2 / b.weight_sum[k];
        const double noise_part = b.noise_sum[k] / b.weight_sum[k];
        worst_product = std::max(worst_product, std::abs(b.rhs[k] - expected - noise_part) / (1 + b.rhs[k]));
      }
    }
  }
  v.require(worst_product <= 1e-10, fmt("product mismatch %.3g", worst_product));
  if (v.ok) v.detail = fmt("%g runs x 200 iterations; max gap/bound=%.4f; product err=%.2g", runs, worst_ratio, worst_product);
  return v;
}

Verdict oracle_budget() {
  Verdict v;
  const ProblemSpec p = generate_problem("quadratic", 10, 7);
  double min_slack = HUGE_VAL;
  int runs = 0;
  for (const auto& c : gd_cases()) {
    GDConfig cfg;
    ProxSetup setup = p.setup();
    const GDReport r = gd_run(p, c, cfg, setup);
    const BudgetCheck b = check_oracle_budget(r, cfg, p.L, c.noise.delta, c.noise.Delta);
    v.require(b.ok, fmt("GD budget: used %g of %g (delta=%g Delta=%g)", double(b.used), b.allowance,
                        c.noise.delta, c.noise.Delta));
    min_slack = std::min(min_slack, b.slack);
    ++runs;
  }
  for (const auto& n : kNoise) {
    for (double L0 : {1.0, 20.0, p.L / 8}) {
      const ProxSetup s = p.setup();
      NoiseSpec ns;
      ns.delta = n.delta;
      ns.Delta = n.Delta;
      ns.seed = 3;
      FGMConfig cfg;
      cfg.L0 = L0;
      cfg.Delta0 = n.Delta;
      cfg.delta0 = n.delta;
      cfg.N = 200;
      const FGMReport r = run_adaptive_fgm(s, make_oracle(p, s, ns, ModelParams{n.delta, n.Delta, p.L, 0}),
                                           objective(p), Vector::Zero(10), cfg);
      const BudgetCheck b = check_oracle_budget(r, cfg, p.L, n.delta, n.Delta);
      v.require(b.ok, fmt("FGM budget: used %g of %g (L0=%g)", double(b.used), b.allowance, L0));
      min_slack = std::min(min_slack, b.slack);
      ++runs;
    }
  }
  if (v.ok) v.detail = fmt("%g GD/FGM runs; min slack %.3g evaluations", runs, min_slack);
  return v;
}

Verdict fgm_lemma_and_rate() {
  Verdict v;
  const ProblemSpec p = generate_problem("quadratic", 10, 7);
  const Vector x0 = Vector::Zero(10);
  int runs = 0;
  for (const auto& n : kNoise) {
    for (double L0 : {1.0, 20.0}) {
      const ProxSetup s = p.setup();
      NoiseSpec ns;
      ns.delta = n.delta;
      ns.Delta = n.Delta;
      ns.seed = 3;
      FGMConfig cfg;
      cfg.L0 = L0;
      cfg.Delta0 = n.Delta;
      cfg.delta0 = n.delta;
      cfg.N = 200;
      const FGMReport r = run_adaptive_fgm(s, make_oracle(p, s, ns, ModelParams{n.delta, n.Delta, p.L, 0}),
                                           objective(p), x0, cfg);
      const double C = budget_constant(cfg.delta0, cfg.Delta0, n.delta, n.Delta);
      v.require(check_Ak_growth(r, p.L, C), fmt("A_k growth fails (delta=%g Delta=%g L0=%g)", n.delta, n.Delta, L0));
      const std::vector<double> b = bound_fgm(r, bregman(s, p.optimum->point, x0), n.delta);
      for (const auto& rec : r.trace) {
        if (!(rec.f - p.optimum->value <= b[rec.k + 1] * (1 + 1e-8))) {
          v.require(false, fmt("FGM bound violated at k=%g", rec.k));
          break;
        }
      }
      ++runs;
    }
  }
  const ProxSetup s = p.setup();
  const double eps = 1e-6;
  const double R2 = bregman(s, p.optimum->point, x0);
  const int limit = static_cast<int>(std::ceil(std::sqrt(8 * p.L * R2 / eps)));
  FGMConfig cfg;
  cfg.L0 = 1.0;
  cfg.N = limit;
  const FGMReport r = run_adaptive_fgm(s, make_oracle(p, s, NoiseSpec{}, ModelParams{0, 0, p.L, 0}), objective(p),
                                       x0, cfg);
  int hit = -1;
  for (const auto& rec : r.trace) {
    if (rec.f - p.optimum->value <= eps) {
      hit = rec.k + 1;
      break;
    }
  }
  v.require(hit > 0, fmt("eps=1e-6 not reached within %g iterations", limit));
  if (v.ok) v.detail = fmt("%g runs; eps=1e-6 reached at k=%g <= %g", runs, hit, limit);
  return v;
}

// -- 5 -------------------------------------------------------------------------

Verdict nonsmooth_complexity() {
  Verdict v;
  const ProblemSpec p = generate_problem("max-affine", 5, 11);
  const double eps = 1e-3;
  const LPSolution oracle = max_affine_minimum(p.objective, p.set);
  const double fs = oracle.value;
  const ProxSetup s = p.setup();
  const Vector x0 = prox_center(s);
  const ModelOracle o = make_oracle(p, s, NoiseSpec{}, ModelParams{0, p.Delta, p.L, 0});
  const double R2 = bregman(s, oracle.point, x0);

  auto t0 = std::chrono::steady_clock::now();
  RestartGDConfig gc;
  gc.epsilon = eps;
  gc.L = p.L;
  gc.Delta = p.Delta;
  gc.R2 = R2;
  const RestartGDReport g = run_restarted_gd(s, o, objective(p), x0, gc);
  const double gd_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double gd_pred = predicted_calls({eps, g.p, 1, RestartMode::kGD}, p.L, p.Delta, R2);
  v.require(g.f_out - fs <= eps, fmt("GD gap %.3g > eps", g.f_out - fs));
  v.require(double(g.calls) <= gd_pred, fmt("GD calls %g > %g", double(g.calls), gd_pred));
  v.require(gd_time < 10.0, fmt("GD took %.2fs", gd_time));

  t0 = std::chrono::steady_clock::now();
  RestartFGMConfig fc;
  fc.epsilon = eps;
  fc.L = p.L;
  fc.Delta = p.Delta;
  fc.R2 = R2;
  const RestartFGMReport f = run_restarted_fgm(s, o, objective(p), x0, fc);
  const double fgm_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double fgm_pred = predicted_calls({eps, f.p, f.gamma, RestartMode::kFGM}, p.L, p.Delta, R2);
  v.require(f.f_out - fs <= eps, fmt("FGM gap %.3g > eps", f.f_out - fs));
  v.require(double(f.calls) <= fgm_pred, fmt("FGM calls %g > %g", double(f.calls), fgm_pred));
  v.require(fgm_time < 10.0, fmt("FGM took %.2fs", fgm_time));
  if (v.ok) {
    v.detail = fmt("GD gap %.2g, %g calls; ", g.f_out - fs, double(g.calls)) +
               fmt("FGM gap %.2g, %g calls (predictions %.3g / %.3g)", f.f_out - fs, double(f.calls), gd_pred, fgm_pred);
  }
  return v;
}

// -- 6 -------------------------------------------------------------------------

Verdict mirror_prox_games() {
  Verdict v;
  std::string detail;
  for (const auto& [kind, dim, seed] : {std::tuple{"diagonal-game", 2, 0}, std::tuple{"matrix-game", 3, 7}}) {
    const ProblemSpec p = generate_problem(kind, dim, seed);
    const SaddleProblem g = SaddleProblem::matrix_game(*p.game);
    MirrorProxConfig c;
    c.epsilon = 1e-3;
    const MirrorProxReport r = run_mirror_prox(model_from_vi(g.to_vi(), p.L), g.setup(), c);
    const double gap = saddle_gap(g, r.y_tilde.head(dim), r.y_tilde.tail(dim));
    v.require(r.stopped, std::string(kind) + ": stopping rule did not trigger");
    v.require(gap <= c.epsilon + 2 * r.delta_tilde + 1e-9, std::string(kind) + fmt(": gap %.3g", gap));
    detail += std::string(kind) + fmt(" gap %.2g after %g iterations (dtilde=%g); ", gap, r.iterations, r.delta_tilde);
  }
  if (v.ok) v.detail = detail.substr(0, detail.size() - 2);
  return v;
}

// -- 7 -------------------------------------------------------------------------

Verdict alg4_box_lp() {
  Verdict v;
  const ProblemSpec p = generate_problem("box-lp", 2, 0);
  const ProxSetup s = p.setup();
  std::string detail;
  for (bool offset_start : {false, true}) {
    SwitchConfig c;
    c.epsilon = 0.01;
    if (offset_start) c.x0 = (Vector(2) << 1.0, -1.0).finished();
    c.Theta0_sq = bregman(s, p.optimum->point, c.x0 ? *c.x0 : prox_center(s));
    const SwitchReport r = run_md_alg4(p, s, c);
    const long long N = switching_iteration_bound(c.Theta0_sq, p.M_f, c.epsilon);
    v.require(r.stopped && r.iterations <= N, fmt("stopped=%g after %g of %g", double(r.stopped), r.iterations, double(N)));
    v.require(r.f_hat <= p.optimum->value + c.epsilon + 1e-9, fmt("f gap %.3g", r.f_hat - p.optimum->value));
    v.require(r.g_hat <= c.epsilon * p.M_g + 1e-9, fmt("g %.3g", r.g_hat));
    const DualCertificate d = dual_certificate(p, s, r);
    v.require(d.gap >= 0.0 && d.gap <= c.epsilon, fmt("dual gap %.3g", d.gap));
    detail += std::string(offset_start ? "x0=(1,-1): " : "x0=center: ") +
              fmt("%g iterations (I=%g, J=%g), ", r.iterations, r.productive, r.unproductive);
    detail += fmt("f gap %.2g, dual gap %.2g; ", r.f_hat - p.optimum->value, d.gap);
  }
  if (v.ok) v.detail = detail.substr(0, detail.size() - 2);
  return v;
}

// -- 8 -------------------------------------------------------------------------

Verdict relative_accuracy() {
  Verdict v;
  const ProblemSpec p = generate_problem("homogeneous-norm-constrained", 2, 0);
  const ProxSetup s = p.setup();
  const HomogeneityReport h = homogeneity_probe(p.objective, 1.0, 1.0, p.optimum->point, *p.optimum, 10'000, 5);
  v.require(h.passed(), "homogeneity probe failed");

  RelativeAccuracyConfig c;
  c.delta_rel = 0.1;
  c.gamma0 = 1.0;
  c.Theta0_sq = 2.0;
  const RelativeAccuracyReport a = relative_accuracy_run(p, s, c);
  v.require(a.N == 400, fmt("N=%g", double(a.N)));
  v.require(!a.inflated, "plain run took the inflated branch");
  v.require(a.run.f_hat <= 1.1 * p.optimum->value, fmt("f=%.6g > 1.1 f*", a.run.f_hat));
  v.require(a.run.g_hat <= a.constraint_bound, fmt("g=%.3g", a.run.g_hat));

  c.Theta0_sq = 1.0;
  const RelativeAccuracyReport b = relative_accuracy_run(p, s, c);
  const double mx = std::max(1.0, c.M_f * c.M_f);
  v.require(c.Theta0_sq < 2 * mx && b.inflated, "inflated branch not taken");
  v.require(b.inflated_count == 800, fmt("inflated count %g", double(b.inflated_count)));
  v.require(b.run.f_hat <= 1.1 * p.optimum->value, fmt("inflated f=%.6g > 1.1 f*", b.run.f_hat));
  if (v.ok) {
    v.detail = fmt("N=%g f=%.6g; inflated count %g, f=%.6g", double(a.N), a.run.f_hat, double(b.inflated_count), b.run.f_hat);
  }
  return v;
}

// -- 9 -------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Verdict determinism() {
  Verdict v;
  const fs::path base = fs::temp_directory_path() / "adaptopt_acceptance";
  fs::remove_all(base);
  const std::string config = std::string(ADAPTOPT_SOURCE_DIR) + "/configs/suite.json";
  const SuiteResult a = run_suite_file(config, (base / "a").string(), 1);
  const SuiteResult b = run_suite_file(config, (base / "b").string(), 2);
  int files = 0;
  for (const auto& e : fs::directory_iterator(base / "a")) {
    const fs::path other = base / "b" / e.path().filename();
    v.require(fs::exists(other) && slurp(e.path()) == slurp(other), e.path().filename().string() + " differs");
    ++files;
  }
  int count_b = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(base / "b")) ++count_b;
  v.require(files == count_b, "file sets differ");
  if (v.ok) v.detail = fmt("%g files identical across reruns (suite %g/%g runs passing)", files,
                           double(a.runs.size() - a.failed()), double(a.runs.size()));
  (void)b;
  fs::remove_all(base);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"AC1 model validation", model_validation},
      {"AC2 adaptive gradient bound", theorem_bound},
      {"AC3 oracle budgets", oracle_budget},
      {"AC4 fast gradient growth and rate", fgm_lemma_and_rate},
      {"AC5 nonsmooth complexity", nonsmooth_complexity},
      {"AC6 mirror prox on matrix games", mirror_prox_games},
      {"AC7 switching on the box LP", alg4_box_lp},
      {"AC8 relative accuracy", relative_accuracy},
      {"AC9 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("threw: ") + e.what();
    }
    std::printf("[%s] %s: %s\n", v.ok ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
    failed += v.ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
