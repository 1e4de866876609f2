#include <gtest/gtest.h>

#include "adaptopt/lp.hpp"

namespace adaptopt {
namespace {

TEST(Combinations, LexicographicOrder) {
  const auto c = detail::combinations(4, 2);
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(c.front(), (std::vector<int>{0, 1}));
  EXPECT_EQ(c[2], (std::vector<int>{0, 3}));
  EXPECT_EQ(c.back(), (std::vector<int>{2, 3}));
}

TEST(VertexLP, SmallProgram) {
  // min -x - y  s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0
  LinearProgram lp;
  lp.c = Vector(2);
  lp.c << -1, -1;
  lp.G = Matrix(4, 2);
  lp.G << 1, 2, 3, 1, -1, 0, 0, -1;
  lp.h = Vector(4);
  lp.h << 4, 6, 0, 0;
  lp.E = Matrix(0, 2);
  lp.e = Vector(0);
  const LPSolution s = solve_lp_vertices(lp);
  EXPECT_NEAR(s.value, -2.8, 1e-12);
  EXPECT_NEAR(s.point[0], 1.6, 1e-12);
  EXPECT_NEAR(s.point[1], 1.2, 1e-12);
}

TEST(VertexLP, InfeasibleThrows) {
  LinearProgram lp;
  lp.c = Vector::Ones(1);
  lp.G = Matrix(2, 1);
  lp.G << 1, -1;
  lp.h = Vector(2);
  lp.h << -1, -1;
  lp.E = Matrix(0, 1);
  lp.e = Vector(0);
  EXPECT_THROW(solve_lp_vertices(lp), Error);
}

TEST(GameValue, DiagonalGame) {
  const LPSolution u = game_value_min(Matrix::Identity(2, 2));
  const LPSolution v = game_value_max(Matrix::Identity(2, 2));
  EXPECT_NEAR(u.value, 0.5, 1e-14);
  EXPECT_NEAR(v.value, 0.5, 1e-14);
  EXPECT_NEAR(u.point[0], 0.5, 1e-14);
  EXPECT_NEAR(v.point[1], 0.5, 1e-14);
}

TEST(GameValue, MatchingPenniesShifted) {
  Matrix A(2, 2);
  A << 1, 0, 0, 1;
  A.array() += 2.0;
  EXPECT_NEAR(game_value_min(A).value, 2.5, 1e-14);
}

TEST(MaxAffineMinimum, AbsoluteValueOnBox) {
  Matrix A(2, 1);
  A << 1, -1;
  const Functional f = Functional::max_affine(A, Vector::Zero(2));
  const LPSolution s = max_affine_minimum(f, FeasibleSet::box(Vector::Constant(1, -1), Vector::Constant(1, 2)));
  EXPECT_NEAR(s.value, 0.0, 1e-15);
  EXPECT_NEAR(s.point[0], 0.0, 1e-15);
}

}  // namespace
}  // namespace adaptopt
