#include <cmath>

#include "adaptopt/lp.hpp"

namespace adaptopt::reference {

LPSolution solve_lp_vertices_serial(const LinearProgram& lp) {
  const int d = static_cast<int>(lp.c.size());
  const int k = d - static_cast<int>(lp.E.rows());
  const auto subsets = detail::combinations(static_cast<int>(lp.G.rows()), k);
  LPSolution sol;
  bool found = false;
  for (const auto& active : subsets) {
    ++sol.candidates;
    Vector z;
    if (!detail::lp_vertex(lp, active, z)) continue;
    ++sol.feasible_vertices;
    const double v = lp.c.dot(z);
    if (!found || v < sol.value) {
      found = true;
      sol.value = v;
      sol.point = z;
    }
  }
  if (!found) throw Error("LP: no feasible vertex");
  return sol;
}

}  // namespace adaptopt::reference
