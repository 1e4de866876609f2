#include <cmath>

#include <gtest/gtest.h>

#include "adaptopt/geometry.hpp"
#include "adaptopt/rng.hpp"
#include "adaptopt/validate.hpp"

namespace adaptopt {
namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

ProxSetup unit_box2() { return ProxSetup::euclidean(FeasibleSet::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0))); }

TEST(Bregman, EuclideanHalfSquaredDistance) {
  const ProxSetup s = ProxSetup::euclidean(FeasibleSet::whole_space(2));
  EXPECT_DOUBLE_EQ(bregman(s, vec2(1, 0), vec2(0, 0)), 0.5);
}

TEST(Bregman, ZeroOnDiagonal) {
  const ProxSetup e = ProxSetup::entropy_simplex(3);
  const Vector x = Vector::Constant(3, 1.0 / 3.0);
  EXPECT_NEAR(bregman(e, x, x), 0.0, 1e-15);
  const ProxSetup b = unit_box2();
  EXPECT_EQ(bregman(b, vec2(0.3, -0.2), vec2(0.3, -0.2)), 0.0);
}

TEST(Bregman, EntropyIsKullbackLeibler) {
  const ProxSetup e = ProxSetup::entropy_simplex(2);
  const double kl = 0.5 * std::log(0.5 / 0.25) + 0.5 * std::log(0.5 / 0.75);
  EXPECT_NEAR(bregman(e, vec2(0.5, 0.5), vec2(0.25, 0.75)), kl, 1e-14);
  EXPECT_NEAR(kl, 0.1438, 1e-4);
}

TEST(Bregman, StrongConvexitySampled) {
  Rng rng(3);
  for (const ProxSetup& s : {ProxSetup::entropy_simplex(4), unit_box2()}) {
    for (int i = 0; i < 500; ++i) {
      const Vector x = sample_point(s, rng);
      const Vector y = sample_point(s, rng);
      const double n = primal_norm(s, y - x);
      EXPECT_GE(bregman(s, y, x), 0.5 * n * n - 1e-12);
    }
  }
}

TEST(ProxStep, EuclideanWholeSpaceIsGradientStep) {
  const ProxSetup s = ProxSetup::euclidean(FeasibleSet::whole_space(2));
  const Vector z = vec2(1, 2);
  const Vector g = vec2(4, -2);
  const ProxResult r = prox_step(s, z, LocalModel(z, g), 2.0);
  EXPECT_TRUE(r.point.isApprox(z - g / 2.0));
}

TEST(ProxStep, EntropyMultiplicativeWeights) {
  const ProxSetup s = ProxSetup::entropy_simplex(2);
  const Vector z = vec2(0.5, 0.5);
  const ProxResult r = prox_step(s, z, LocalModel(z, vec2(std::log(4.0), 0.0)), 1.0);
  EXPECT_NEAR(r.point[0], 0.2, 1e-9);
  EXPECT_NEAR(r.point[1], 0.8, 1e-9);

  // Grid search over the segment agrees.
  double best = 1e300, arg = 0.0;
  for (int i = 1; i < 100000; ++i) {
    const double t = i / 100000.0;
    const Vector x = vec2(t, 1 - t);
    const double v = std::log(4.0) * (t - 0.5) + bregman(s, x, z);
    if (v < best) best = v, arg = t;
  }
  EXPECT_NEAR(arg, 0.2, 1e-5);
}

TEST(ProxStep, BallProjectsRadially) {
  const ProxSetup s = ProxSetup::euclidean(FeasibleSet::ball(Vector::Zero(2), 1.0));
  const Vector z = Vector::Zero(2);
  const ProxResult r = prox_step(s, z, LocalModel(z, vec2(-3, 0)), 1.0);
  EXPECT_NEAR(r.point[0], 1.0, 1e-15);
  EXPECT_NEAR(r.point[1], 0.0, 1e-15);
}

TEST(ProxStep, CompositeL1OnBoxMatchesGrid) {
  const ProxSetup s = unit_box2();
  const Vector z = vec2(0.2, -0.4);
  const LocalModel m(z, vec2(0.3, -1.5), Regularizer::l1(0.5));
  const ProxResult r = prox_step(s, z, m, 2.0);
  double best = 1e300;
  Vector arg(2);
  for (int i = 0; i <= 400; ++i) {
    for (int j = 0; j <= 400; ++j) {
      const Vector x = vec2(-1 + i / 200.0, -1 + j / 200.0);
      const double v = m(x) + 2.0 * bregman(s, x, z);
      if (v < best) best = v, arg = x;
    }
  }
  EXPECT_LE((r.point - arg).norm(), 1e-2);
  EXPECT_LE(m(r.point) + 2.0 * bregman(s, r.point, z), best + 1e-12);
}

TEST(MirrorStep, BoxClamp) {
  const Vector x = mirror_step(unit_box2(), vec2(0, 0), vec2(2, 0));
  EXPECT_EQ(x, vec2(-1, 0));
}

TEST(MirrorStep, ZeroStepKeepsPoint) {
  const Vector x = vec2(0.25, -0.5);
  EXPECT_EQ(mirror_step(unit_box2(), x, Vector::Zero(2)), x);
  const Vector u = Vector::Constant(3, 1.0 / 3.0);
  EXPECT_TRUE(mirror_step(ProxSetup::entropy_simplex(3), u, Vector::Zero(3)).isApprox(u, 1e-15));
}

TEST(Diameter, SimplexFromUniformIsLogN) {
  for (int n : {2, 3, 7}) {
    const ProxSetup s = ProxSetup::entropy_simplex(n);
    EXPECT_NEAR(diameter_bound(s, Vector::Constant(n, 1.0 / n)), std::log(n), 1e-12);
  }
}

TEST(Diameter, BallFromCenter) {
  const ProxSetup s = ProxSetup::euclidean(FeasibleSet::ball(Vector::Zero(3), 2.0));
  EXPECT_DOUBLE_EQ(diameter_bound(s, Vector::Zero(3)), 2.0);
}

TEST(Diameter, WholeSpaceThrows) {
  const ProxSetup s = ProxSetup::euclidean(FeasibleSet::whole_space(2));
  try {
    diameter_bound(s, Vector::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("unbounded set"), std::string::npos);
  }
}

TEST(DualNorm, Examples) {
  EXPECT_DOUBLE_EQ(dual_norm(ProxSetup::euclidean(FeasibleSet::whole_space(2)), vec2(3, 4)), 5.0);
  EXPECT_DOUBLE_EQ(dual_norm(ProxSetup::entropy_simplex(2), vec2(3, -4)), 4.0);
  EXPECT_EQ(dual_norm(unit_box2(), Vector::Zero(2)), 0.0);
}

TEST(ProxSetup, RejectsMismatchedPairing) {
  EXPECT_THROW(ProxSetup(NormKind::kL2, ProxKind::kNegativeEntropy, FeasibleSet::simplex(2)), Error);
  EXPECT_THROW(ProxSetup(NormKind::kL1, ProxKind::kSquaredEuclidean, FeasibleSet::simplex(2)), Error);
}

TEST(ProxSetup, ProductNormAndCenter) {
  const ProxSetup p = ProxSetup::product({ProxSetup::entropy_simplex(2), ProxSetup::entropy_simplex(3)});
  EXPECT_EQ(p.dim(), 5);
  const Vector c = prox_center(p);
  EXPECT_NEAR(c.head(2).sum(), 1.0, 1e-15);
  EXPECT_NEAR(c[4], 1.0 / 3.0, 1e-15);
  Vector g(5);
  g << 1, -2, 3, 0, -4;
  EXPECT_NEAR(dual_norm(p, g), std::sqrt(4.0 + 16.0), 1e-14);
}

TEST(FeasibleSet, SupportPointTiesToLowestIndex) {
  const FeasibleSet s = FeasibleSet::simplex(3);
  Vector c(3);
  c << 1, 2, 2;
  EXPECT_EQ(s.support(c), 2.0);
  EXPECT_EQ(s.support_point(c), (Vector(3) << 0, 1, 0).finished());
}

TEST(FeasibleSet, HalfspaceProjection) {
  Halfspace h{vec2(-1, 0), -1.0};
  const FeasibleSet s = FeasibleSet::halfspaces(2, {h});
  EXPECT_FALSE(s.bounded());
  EXPECT_TRUE(s.project(vec2(0, 3)).isApprox(vec2(1, 3)));
  EXPECT_TRUE(s.contains(vec2(2, 0)));
}

}  // namespace
}  // namespace adaptopt
