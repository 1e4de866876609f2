#include "adaptopt/lp.hpp"

#include <cmath>
#include <limits>

namespace adaptopt {

namespace detail {

std::vector<std::vector<int>> combinations(int m, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > m) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

bool lp_vertex(const LinearProgram& lp, const std::vector<int>& active, Vector& z) {
  const int d = static_cast<int>(lp.c.size());
  const int me = static_cast<int>(lp.E.rows());
  Matrix M(d, d);
  Vector r(d);
  if (me > 0) {
    M.topRows(me) = lp.E;
    r.head(me) = lp.e;
  }
  for (std::size_t i = 0; i < active.size(); ++i) {
    M.row(me + static_cast<int>(i)) = lp.G.row(active[i]);
    r[me + static_cast<int>(i)] = lp.h[active[i]];
  }
  Eigen::FullPivLU<Matrix> lu(M);
  if (lu.rank() < d) return false;
  z = lu.solve(r);
  if (!z.allFinite()) return false;
  const Vector slack = lp.G * z - lp.h;
  for (Eigen::Index i = 0; i < slack.size(); ++i) {
    if (slack[i] > 1e-9 * (1.0 + std::abs(lp.h[i]))) return false;
  }
  if (me > 0 && ((lp.E * z - lp.e).array().abs() > 1e-9).any()) return false;
  return true;
}

}  // namespace detail

namespace {

void check_lp(const LinearProgram& lp) {
  const auto d = lp.c.size();
  if (d < 1 || lp.G.cols() != d || lp.G.rows() != lp.h.size()) throw Error("LP: inconsistent G/h");
  if (lp.E.rows() > 0 && (lp.E.cols() != d || lp.E.rows() != lp.e.size())) {
    throw Error("LP: inconsistent E/e");
  }
  if (lp.E.rows() > d) throw Error("LP: more equalities than variables");
}

double binomial(int m, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
  return r;
}

}  // namespace

LPSolution solve_lp_vertices(const LinearProgram& lp) {
  check_lp(lp);
  const int d = static_cast<int>(lp.c.size());
  const int k = d - static_cast<int>(lp.E.rows());
  const int m = static_cast<int>(lp.G.rows());
  if (binomial(m, k) > 5e6) throw Error("LP: vertex enumeration too large");
  const auto subsets = detail::combinations(m, k);
  const long long count = static_cast<long long>(subsets.size());
  std::vector<double> values(subsets.size(), std::numeric_limits<double>::infinity());

#pragma omp parallel for schedule(dynamic, 64)
  for (long long i = 0; i < count; ++i) {
    Vector z;
    if (detail::lp_vertex(lp, subsets[i], z)) values[i] = lp.c.dot(z);
  }

  LPSolution sol;
  sol.candidates = count;
  long long best = -1;
  for (long long i = 0; i < count; ++i) {
    if (!std::isfinite(values[i])) continue;
    ++sol.feasible_vertices;
    if (best < 0 || values[i] < values[best]) best = i;
  }
  if (best < 0) throw Error("LP: no feasible vertex");
  detail::lp_vertex(lp, subsets[best], sol.point);
  sol.value = values[best];
  return sol;
}

LPSolution max_affine_minimum(const Functional& f, const FeasibleSet& box) {
  if (f.kind() != Functional::Kind::kMaxAffine) throw Error("max_affine_minimum: not max-affine");
  if (box.kind() != FeasibleSet::Kind::kBox) throw Error("max_affine_minimum: set must be a box");
  const int n = f.dim();
  const int m = static_cast<int>(f.A().rows());
  // Variables (x, t): minimize t s.t. a_i x + c_i <= t, lo <= x <= hi.
  LinearProgram lp;
  lp.c = Vector::Zero(n + 1);
  lp.c[n] = 1.0;
  lp.G = Matrix::Zero(m + 2 * n, n + 1);
  lp.h = Vector::Zero(m + 2 * n);
  lp.G.topLeftCorner(m, n) = f.A();
  lp.G.block(0, n, m, 1).setConstant(-1.0);
  lp.h.head(m) = -f.c();
  for (int i = 0; i < n; ++i) {
    lp.G(m + i, i) = 1.0;
    lp.h[m + i] = box.hi()[i];
    lp.G(m + n + i, i) = -1.0;
    lp.h[m + n + i] = -box.lo()[i];
  }
  LPSolution sol = solve_lp_vertices(lp);
  sol.point = sol.point.head(n).eval();
  return sol;
}

namespace {

// min_u max_j (A'u)_j over the simplex in u.
LPSolution min_max_simplex(const Matrix& A) {
  const int n1 = static_cast<int>(A.rows());
  const int n2 = static_cast<int>(A.cols());
  LinearProgram lp;
  lp.c = Vector::Zero(n1 + 1);
  lp.c[n1] = 1.0;
  lp.G = Matrix::Zero(n2 + n1, n1 + 1);
  lp.h = Vector::Zero(n2 + n1);
  lp.G.topLeftCorner(n2, n1) = A.transpose();
  lp.G.block(0, n1, n2, 1).setConstant(-1.0);
  for (int i = 0; i < n1; ++i) lp.G(n2 + i, i) = -1.0;
  lp.E = Matrix::Zero(1, n1 + 1);
  lp.E.block(0, 0, 1, n1).setOnes();
  lp.e = Vector::Ones(1);
  LPSolution sol = solve_lp_vertices(lp);
  sol.point = sol.point.head(n1).eval();
  return sol;
}

}  // namespace

LPSolution game_value_min(const Matrix& A) { return min_max_simplex(A); }

LPSolution game_value_max(const Matrix& A) {
  // max_v min_i (Av)_i = -min_v max_i (-A v)_i.
  LPSolution sol = min_max_simplex(-A.transpose());
  sol.value = -sol.value;
  return sol;
}

}  // namespace adaptopt
