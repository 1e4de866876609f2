#include "adaptopt/problems.hpp"

#include <cmath>

#include "adaptopt/lp.hpp"
#include "adaptopt/rng.hpp"

namespace adaptopt {

using nlohmann::json;

namespace {

Matrix random_orthogonal(int n, Rng& rng) {
  Matrix G(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) G(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(G);
  return qr.householderQ() * Matrix::Identity(n, n);
}

/// Symmetric matrix whose spectrum has 0.1 and 10 as extreme values.
Matrix spectrum_matrix(int n, Rng& rng) {
  Vector lambda(n);
  for (int i = 0; i < n; ++i) lambda[i] = rng.uniform(0.1, 10.0);
  lambda[0] = 0.1;
  if (n > 1) lambda[n - 1] = 10.0;
  const Matrix U = random_orthogonal(n, rng);
  const Matrix Q = U * lambda.asDiagonal() * U.transpose();
  return 0.5 * (Q + Q.transpose());
}

ProblemSpec quadratic_problem(int n, std::uint64_t seed) {
  Rng rng(hash_combine(seed, 0x71));
  Matrix Q = spectrum_matrix(n, rng);
  Vector b = rng.normal_vector(n);
  ProblemSpec p;
  const Vector x_star = Q.ldlt().solve(b);
  p.objective = Functional::quadratic(Q, b);
  p.set = FeasibleSet::whole_space(n);
  p.optimum = ReferenceOptimum{p.objective.value(x_star), x_star};
  p.L = n > 1 ? 10.0 : 0.1;
  p.mu = 0.1;
  return p;
}

ProblemSpec max_affine_problem(int n, std::uint64_t seed) {
  Rng rng(hash_combine(seed, 0x3a));
  const int m = 10;
  Matrix A(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(-0.02, 0.02);
  }
  Vector c(m);
  for (int i = 0; i < m; ++i) c[i] = rng.uniform(-0.01, 0.01);
  ProblemSpec p;
  p.objective = Functional::max_affine(A, c);
  p.set = FeasibleSet::box(Vector::Constant(n, -1.0), Vector::Constant(n, 1.0));
  const LPSolution sol = max_affine_minimum(p.objective, p.set);
  p.optimum = ReferenceOptimum{sol.value, sol.point};
  p.L = 1.0;
  p.Delta = max_affine_jump(p.objective);
  double mf = 0.0;
  for (int i = 0; i < m; ++i) mf = std::max(mf, A.row(i).norm());
  p.M_f = mf;
  return p;
}

ProblemSpec composite_problem(int n, std::uint64_t seed) {
  Rng rng(hash_combine(seed, 0xc0));
  Matrix Q = spectrum_matrix(n, rng);
  Vector b = rng.normal_vector(n);
  ProblemSpec p;
  p.objective = Functional::composite(Q, b, 0.1);
  p.set = FeasibleSet::box(Vector::Constant(n, -1.0), Vector::Constant(n, 1.0));
  const Vector x = composite_minimizer(p.objective, p.set);
  p.optimum = ReferenceOptimum{p.objective.value(x), x};
  p.L = n > 1 ? 10.0 : 0.1;
  p.mu = 0.1;
  return p;
}

ProblemSpec game_problem(Matrix A) {
  ProblemSpec p;
  const int n1 = static_cast<int>(A.rows());
  const int n2 = static_cast<int>(A.cols());
  const LPSolution row = game_value_min(A);
  const LPSolution col = game_value_max(A);
  Vector point(n1 + n2);
  point << row.point, col.point;
  p.objective = Functional::norm(n1 + n2);
  p.set = FeasibleSet::whole_space(n1 + n2);
  p.prox = ProxKind::kNegativeEntropy;
  p.L = A.cwiseAbs().maxCoeff();
  p.optimum = ReferenceOptimum{row.value, point};
  p.game = std::move(A);
  return p;
}

ProblemSpec homogeneous_problem(int n) {
  if (n < 1) throw Error("homogeneous-norm-constrained: dim must be >= 1");
  ProblemSpec p;
  p.objective = Functional::norm(n);
  Vector a = Vector::Zero(n);
  a[0] = -1.0;
  p.constraints.push_back(Functional::affine(a, 1.0));
  p.set = FeasibleSet::whole_space(n);
  Vector x = Vector::Zero(n);
  x[0] = 1.0;
  p.optimum = ReferenceOptimum{1.0, x};
  p.M_f = 1.0;
  p.M_g = 1.0;
  return p;
}

ProblemSpec box_lp_problem() {
  ProblemSpec p;
  p.objective = Functional::affine(Vector::Constant(2, 1.0), 0.0);
  Vector a(2);
  a << 1.0, -1.0;
  p.constraints.push_back(Functional::affine(a, 0.0));
  p.set = FeasibleSet::box(Vector::Constant(2, -1.0), Vector::Constant(2, 1.0));
  p.optimum = ReferenceOptimum{-2.0, Vector::Constant(2, -1.0)};
  p.M_f = std::sqrt(2.0);
  p.M_g = std::sqrt(2.0);
  return p;
}

ProblemSpec abs_problem(int n) {
  ProblemSpec p;
  p.objective = Functional::norm(n);
  p.set = FeasibleSet::whole_space(n);
  p.optimum = ReferenceOptimum{0.0, Vector::Zero(n)};
  p.Delta = 2.0;
  p.M_f = 1.0;
  return p;
}

}  // namespace

const std::vector<std::string>& problem_kinds() {
  static const std::vector<std::string> kinds = {
      "quadratic",     "max-affine",
      "composite",     "matrix-game",
      "diagonal-game", "homogeneous-norm-constrained",
      "abs",           "box-lp"};
  return kinds;
}

double max_affine_jump(const Functional& f) {
  if (f.kind() != Functional::Kind::kMaxAffine) throw Error("max_affine_jump: not max-affine");
  double best = 0.0;
  for (int i = 0; i < f.A().rows(); ++i) {
    for (int j = i + 1; j < f.A().rows(); ++j) {
      best = std::max(best, (f.A().row(i) - f.A().row(j)).norm());
    }
  }
  return best;
}

Vector composite_minimizer(const Functional& f, const FeasibleSet& box, int sweeps, double tol) {
  if (f.kind() != Functional::Kind::kComposite && f.kind() != Functional::Kind::kQuadratic) {
    throw Error("composite_minimizer: needs a quadratic or composite functional");
  }
  if (box.kind() != FeasibleSet::Kind::kBox) throw Error("composite_minimizer: needs a box");
  const Matrix& Q = f.Q();
  const Vector& b = f.b();
  const double w = f.weight();
  const int n = f.dim();
  Vector x = box.project(Vector::Zero(n));
  for (int s = 0; s < sweeps; ++s) {
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = b[i] - (Q.row(i).dot(x) - Q(i, i) * x[i]);
      const double shrunk = std::copysign(std::max(std::abs(r) - w, 0.0), r);
      const double t = std::clamp(shrunk / Q(i, i), box.lo()[i], box.hi()[i]);
      change = std::max(change, std::abs(t - x[i]));
      x[i] = t;
    }
    if (change <= tol) return x;
  }
  throw SolverError("composite_minimizer: coordinate descent did not converge");
}

ProblemSpec generate_problem(const std::string& kind, int dim, std::uint64_t seed) {
  if (dim < 1) throw Error("generate_problem: dim must be >= 1");
  ProblemSpec p;
  if (kind == "quadratic") {
    p = quadratic_problem(dim, seed);
  } else if (kind == "max-affine") {
    p = max_affine_problem(dim, seed);
  } else if (kind == "composite") {
    p = composite_problem(dim, seed);
  } else if (kind == "matrix-game") {
    Rng rng(hash_combine(seed, 0x9a));
    Matrix A(dim, dim);
    for (int j = 0; j < dim; ++j) {
      for (int i = 0; i < dim; ++i) A(i, j) = rng.uniform();
    }
    p = game_problem(std::move(A));
  } else if (kind == "diagonal-game") {
    p = game_problem(Matrix::Identity(dim, dim));
  } else if (kind == "homogeneous-norm-constrained") {
    p = homogeneous_problem(dim);
  } else if (kind == "abs") {
    p = abs_problem(dim);
  } else if (kind == "box-lp") {
    if (dim != 2) throw Error("generate_problem: box-lp is two-dimensional");
    p = box_lp_problem();
  } else {
    throw Error("generate_problem: unknown problem kind '" + kind + "'");
  }
  p.kind = kind;
  p.seed = seed;
  p.check();
  return p;
}

// -- JSON ------------------------------------------------------------------------

json to_json(const Vector& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw Error("json: expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

json to_json(const Matrix& m) {
  json j = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(to_json(Vector(m.row(i).transpose())));
  return j;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("json: expected a nonempty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Vector r = vector_from_json(j[static_cast<std::size_t>(i)]);
    if (r.size() != cols) throw Error("json: ragged matrix");
    m.row(i) = r.transpose();
  }
  return m;
}

json to_json(const Functional& f) {
  json j;
  j["kind"] = to_string(f.kind());
  switch (f.kind()) {
    case Functional::Kind::kQuadratic:
      j["Q"] = to_json(f.Q());
      j["b"] = to_json(f.b());
      break;
    case Functional::Kind::kComposite:
      j["Q"] = to_json(f.Q());
      j["b"] = to_json(f.b());
      j["l1"] = f.weight();
      break;
    case Functional::Kind::kMaxAffine:
      j["A"] = to_json(f.A());
      j["c"] = to_json(f.c());
      break;
    case Functional::Kind::kNorm:
      j["dim"] = f.dim();
      j["scale"] = f.weight();
      break;
  }
  return j;
}

Functional functional_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "quadratic") return Functional::quadratic(matrix_from_json(j.at("Q")), vector_from_json(j.at("b")));
  if (kind == "composite") {
    return Functional::composite(matrix_from_json(j.at("Q")), vector_from_json(j.at("b")),
                                 j.at("l1").get<double>());
  }
  if (kind == "max-affine") return Functional::max_affine(matrix_from_json(j.at("A")), vector_from_json(j.at("c")));
  if (kind == "norm") return Functional::norm(j.at("dim").get<int>(), j.at("scale").get<double>());
  throw Error("json: unknown functional kind '" + kind + "'");
}

json to_json(const FeasibleSet& s) {
  json j;
  j["kind"] = to_string(s.kind());
  j["dim"] = s.dim();
  switch (s.kind()) {
    case FeasibleSet::Kind::kWholeSpace:
    case FeasibleSet::Kind::kSimplex:
      break;
    case FeasibleSet::Kind::kBox:
      j["lo"] = to_json(s.lo());
      j["hi"] = to_json(s.hi());
      break;
    case FeasibleSet::Kind::kBall:
      j["center"] = to_json(s.center());
      j["radius"] = s.radius();
      break;
    case FeasibleSet::Kind::kHalfspaces: {
      json cs = json::array();
      for (const auto& h : s.constraints()) cs.push_back({{"normal", to_json(h.normal)}, {"offset", h.offset}});
      j["constraints"] = cs;
      break;
    }
  }
  return j;
}

FeasibleSet set_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int n = j.at("dim").get<int>();
  if (kind == "whole-space") return FeasibleSet::whole_space(n);
  if (kind == "standard-simplex") return FeasibleSet::simplex(n);
  if (kind == "box") return FeasibleSet::box(vector_from_json(j.at("lo")), vector_from_json(j.at("hi")));
  if (kind == "euclidean-ball") {
    return FeasibleSet::ball(vector_from_json(j.at("center")), j.at("radius").get<double>());
  }
  if (kind == "halfspace-intersection") {
    std::vector<Halfspace> hs;
    for (const auto& c : j.at("constraints")) {
      hs.push_back(Halfspace{vector_from_json(c.at("normal")), c.at("offset").get<double>()});
    }
    return FeasibleSet::halfspaces(n, std::move(hs));
  }
  throw Error("json: unknown set kind '" + kind + "'");
}

json to_json(const ProblemSpec& p) {
  json j;
  j["kind"] = p.kind;
  j["seed"] = p.seed;
  j["dim"] = p.dim();
  j["objective"] = to_json(p.objective);
  json cs = json::array();
  for (const auto& c : p.constraints) cs.push_back(to_json(c));
  j["constraints"] = cs;
  j["set"] = to_json(p.set);
  j["prox"] = to_string(p.prox);
  j["game"] = p.game ? to_json(*p.game) : json(nullptr);
  if (p.optimum) {
    j["optimum"] = {{"value", p.optimum->value}, {"point", to_json(p.optimum->point)}};
  } else {
    j["optimum"] = nullptr;
  }
  j["constants"] = {{"M_f", p.M_f}, {"M_g", p.M_g}, {"L", p.L}, {"mu", p.mu}, {"Delta", p.Delta}};
  return j;
}

ProblemSpec problem_from_json(const json& j) {
  ProblemSpec p;
  p.kind = j.at("kind").get<std::string>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.objective = functional_from_json(j.at("objective"));
  for (const auto& c : j.at("constraints")) p.constraints.push_back(functional_from_json(c));
  p.set = set_from_json(j.at("set"));
  const std::string prox = j.at("prox").get<std::string>();
  if (prox == "squared-euclidean") {
    p.prox = ProxKind::kSquaredEuclidean;
  } else if (prox == "negative-entropy") {
    p.prox = ProxKind::kNegativeEntropy;
  } else {
    throw Error("json: unknown prox kind '" + prox + "'");
  }
  if (j.contains("game") && !j["game"].is_null()) p.game = matrix_from_json(j["game"]);
  if (j.contains("optimum") && !j["optimum"].is_null()) {
    p.optimum = ReferenceOptimum{j["optimum"].at("value").get<double>(),
                                 vector_from_json(j["optimum"].at("point"))};
  }
  const json& k = j.at("constants");
  p.M_f = k.at("M_f").get<double>();
  p.M_g = k.at("M_g").get<double>();
  p.L = k.at("L").get<double>();
  p.mu = k.at("mu").get<double>();
  p.Delta = k.at("Delta").get<double>();
  p.check();
  return p;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace adaptopt
