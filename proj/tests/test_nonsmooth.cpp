#include <cmath>

#include <gtest/gtest.h>

#include "adaptopt/lp.hpp"
#include "adaptopt/nonsmooth.hpp"
#include "adaptopt/problems.hpp"

namespace adaptopt {
namespace {

ExactFunction objective(const ProblemSpec& p) {
  return [p](const Vector& x) { return p.objective.value(x); };
}

TEST(ChooseP, GradientMethod) {
  EXPECT_EQ(choose_p_gd(0.0, 0.1, 1.0), 0);
  EXPECT_EQ(choose_p_gd(0.75, 0.6, 1.0), 4);  // 16 D^2/(eps L) = 15
  EXPECT_EQ(choose_p_gd(1.0, 1.0, 1.0), 5);   // = 16
}

TEST(ChooseP, FastMethod) {
  EXPECT_EQ(choose_p_fgm(0.0, 0.1, 1.0, 5.0), 0);
  EXPECT_EQ(choose_p_fgm(1.0, 1.0, 1.0, 1.0), 3);  // 4 gamma D^2/(L eps) = 4
  EXPECT_EQ(choose_p_fgm(0.25, 0.25, 1.0, 1.0), 1); // = 1
  EXPECT_THROW(choose_p_fgm(1.0, 1.0, 1.0, 0.5), Error);
}

TEST(PredictedCalls, Examples) {
  EXPECT_EQ(predicted_calls({0.01, 0, 1.0, RestartMode::kGD}, 1.0, 0.0, 1.0), 400.0);
  EXPECT_EQ(predicted_calls({0.01, 0, 1.0, RestartMode::kFGM}, 1.0, 0.0, 1.0), 29.0);
  // 16 D^2 / (eps L) = 15: log factor 4.
  const double D = 0.75, eps = 0.6, L = 1.0, R2 = 2.0;
  const double bracket = std::ceil(4 * L * R2 / eps + 64 * D * D * R2 / (eps * eps));
  EXPECT_EQ(predicted_calls({eps, 4, 1.0, RestartMode::kGD}, L, D, R2), bracket * 4);
}

TEST(PredictedCalls, StronglyConvexFormula) {
  const double L = 2, D = 0.5, R2 = 1, mu = 0.1, C = 1, eps = 0.01;
  const double head = (2 * C * L / mu + 32 * C * D * D / (mu * eps)) *
                      std::log(4 * C * L * R2 / eps + 64 * C * R2 / (eps * eps));
  const double lf = std::ceil(std::log2(1 + 16 * D * D / (eps * L)));
  EXPECT_EQ(predicted_calls({eps, 0, 1, RestartMode::kGDStronglyConvex}, L, D, R2, mu, C),
            std::ceil(head) * lf - 1);
  EXPECT_THROW(predicted_calls({eps, 0, 1, RestartMode::kGD}, L, D, R2, mu), Error);
}

TEST(InflationFactor, Ceiling) {
  EXPECT_EQ(inflation_factor(10, 0, 3, 0), 7.0);
  EXPECT_EQ(inflation_factor(1, 2, 4, 1), 4.0);
}

TEST(RestartedGD, AbsoluteValue) {
  const ProblemSpec p = generate_problem("abs", 1, 0);
  const ProxSetup s = p.setup();
  const ModelOracle o = make_oracle(p, s, NoiseSpec{}, ModelParams{0, 2, 1, 0});
  RestartGDConfig c;
  c.epsilon = 0.1;
  c.L = 1.0;
  c.Delta = 2.0;
  c.R2 = 0.5;
  const RestartGDReport r = run_restarted_gd(s, o, objective(p), Vector::Ones(1), c);
  EXPECT_TRUE(r.stopped);
  EXPECT_LE(r.f_out, 0.1);
  EXPECT_EQ(r.termination_failures, 0);
  EXPECT_LE(double(r.calls), predicted_calls({0.1, r.p, 1, RestartMode::kGD}, 1.0, 2.0, 0.5));
}

TEST(RestartedGD, SmoothReducesToPlainMethod) {
  const ProblemSpec p = generate_problem("quadratic", 5, 1);
  const ProxSetup s = p.setup();
  const ModelOracle o = make_oracle(p, s, NoiseSpec{}, ModelParams{0, 0, p.L, 0});
  const Vector x0 = Vector::Zero(5);
  RestartGDConfig c;
  c.epsilon = 1e-3;
  c.L = p.L;
  c.R2 = bregman(s, p.optimum->point, x0);
  const RestartGDReport r = run_restarted_gd(s, o, objective(p), x0, c);
  EXPECT_EQ(r.p, 0);
  EXPECT_TRUE(r.stopped);
  EXPECT_EQ(r.calls, r.iterations);
  EXPECT_LE(r.f_out - p.optimum->value, c.epsilon);
  EXPECT_LE(double(r.calls), std::ceil(4 * p.L * c.R2 / c.epsilon));
}

TEST(RestartedGD, MaxAffine) {
  const ProblemSpec p = generate_problem("max-affine", 5, 11);
  const ProxSetup s = p.setup();
  const ModelOracle o = make_oracle(p, s, NoiseSpec{}, ModelParams{0, p.Delta, p.L, 0});
  const Vector x0 = prox_center(s);
  RestartGDConfig c;
  c.epsilon = 1e-3;
  c.L = p.L;
  c.Delta = p.Delta;
  c.R2 = bregman(s, p.optimum->point, x0);
  const RestartGDReport r = run_restarted_gd(s, o, objective(p), x0, c);
  EXPECT_TRUE(r.stopped);
  EXPECT_EQ(r.termination_failures, 0);
  EXPECT_LE(r.f_out - p.optimum->value, c.epsilon);
  EXPECT_LE(double(r.calls), predicted_calls({c.epsilon, r.p, 1, RestartMode::kGD}, c.L, c.Delta, c.R2));
}

TEST(RestartedGD, TargetAndFixedRules) {
  const ProblemSpec p = generate_problem("abs", 1, 0);
  const ProxSetup s = p.setup();
  const ModelOracle o = make_oracle(p, s, NoiseSpec{}, ModelParams{0, 2, 1, 0});
  RestartGDConfig c;
  c.epsilon = 0.1;
  c.Delta = 2.0;
  c.stop = StopRule::kTarget;
  EXPECT_THROW(run_restarted_gd(s, o, objective(p), Vector::Ones(1), c), Error);
  c.f_star = 0.0;
  EXPECT_LE(run_restarted_gd(s, o, objective(p), Vector::Ones(1), c).f_out, 0.1);
  c.stop = StopRule::kFixed;
  c.fixed_iterations = 7;
  EXPECT_EQ(run_restarted_gd(s, o, objective(p), Vector::Ones(1), c).iterations, 7);
}

TEST(RestartedFGM, NoiseFreeIterationCount) {
  EXPECT_EQ(restarted_fgm_iterations(0.01, 1.0, 0.0, 1.0), 29);
  const ProblemSpec p = generate_problem("quadratic", 5, 1);
  const ProxSetup s = p.setup();
  const ModelOracle o = make_oracle(p, s, NoiseSpec{}, ModelParams{0, 0, p.L, 0});
  const Vector x0 = Vector::Zero(5);
  RestartFGMConfig c;
  c.epsilon = 1e-4;
  c.L = p.L;
  c.R2 = bregman(s, p.optimum->point, x0);
  const RestartFGMReport r = run_restarted_fgm(s, o, objective(p), x0, c);
  EXPECT_EQ(r.p, 0);
  EXPECT_EQ(r.N, static_cast<int>(std::ceil(std::sqrt(8 * p.L * c.R2 / c.epsilon))));
  EXPECT_EQ(r.calls, r.N);
  EXPECT_EQ(r.descent_violations, 0);
  EXPECT_LE(r.f_out - p.optimum->value, c.epsilon);
}

TEST(RestartedFGM, MaxAffine) {
  const ProblemSpec p = generate_problem("max-affine", 5, 11);
  const ProxSetup s = p.setup();
  const ModelOracle o = make_oracle(p, s, NoiseSpec{}, ModelParams{0, p.Delta, p.L, 0});
  const Vector x0 = prox_center(s);
  RestartFGMConfig c;
  c.epsilon = 1e-2;
  c.L = p.L;
  c.Delta = p.Delta;
  c.R2 = bregman(s, p.optimum->point, x0);
  const RestartFGMReport r = run_restarted_fgm(s, o, objective(p), x0, c);
  EXPECT_GE(r.gamma, r.N);
  EXPECT_EQ(r.alternative_violations, 0);
  EXPECT_EQ(r.descent_violations, 0);
  EXPECT_LE(r.f_out - p.optimum->value, c.epsilon);
  EXPECT_LE(double(r.calls),
            predicted_calls({c.epsilon, r.p, r.gamma, RestartMode::kFGM}, c.L, c.Delta, c.R2));
}

TEST(MaxAffineOracle, VertexEnumerationAgreesWithGrid) {
  const ProblemSpec p = generate_problem("max-affine", 2, 3);
  const LPSolution lp = max_affine_minimum(p.objective, p.set);
  double best = 1e300;
  for (int i = 0; i <= 800; ++i) {
    for (int j = 0; j <= 800; ++j) {
      Vector x(2);
      x << -1 + i / 400.0, -1 + j / 400.0;
      best = std::min(best, p.objective.value(x));
    }
  }
  EXPECT_LE(lp.value, best + 1e-12);
  EXPECT_GE(lp.value, best - 0.02 * 2.0 / 400.0 * 2);
  EXPECT_NEAR(p.objective.value(lp.point), lp.value, 1e-12);
}

}  // namespace
}  // namespace adaptopt
