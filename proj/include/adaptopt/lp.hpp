#pragma once

// Small linear programs solved by exhaustive vertex enumeration. Used as an
// independent ground truth for nonsmooth minima and matrix-game values.

#include "adaptopt/functional.hpp"
#include "adaptopt/geometry.hpp"

namespace adaptopt {

/// min c'z  s.t.  G z <= h,  E z = e.
struct LinearProgram {
  Vector c;
  Matrix G;
  Vector h;
  Matrix E;
  Vector e;
};

struct LPSolution {
  double value = 0.0;
  Vector point;
  long long candidates = 0;
  long long feasible_vertices = 0;
};

/// Optimal vertex; ties go to the first candidate in lexicographic subset
/// order. Throws if no vertex is feasible or the enumeration exceeds 5e6
/// candidates. OpenMP-parallel over candidate subsets.
LPSolution solve_lp_vertices(const LinearProgram& lp);

namespace reference {
LPSolution solve_lp_vertices_serial(const LinearProgram& lp);
}

/// min over a box of max_i <a_i, x> + c_i. Returns the minimizing x.
LPSolution max_affine_minimum(const Functional& f, const FeasibleSet& box);

/// Value of min_u max_v u'Av over simplices, with the optimal u
/// (game_value_min) or the optimal v (game_value_max).
LPSolution game_value_min(const Matrix& A);
LPSolution game_value_max(const Matrix& A);

namespace detail {
/// All k-subsets of {0..m-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int m, int k);
/// Solves the square system for one active set; false if singular or infeasible.
bool lp_vertex(const LinearProgram& lp, const std::vector<int>& active, Vector& z);
}  // namespace detail

}  // namespace adaptopt
