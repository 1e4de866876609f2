#include "adaptopt/functional.hpp"

#include <cmath>
#include <limits>

namespace adaptopt {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw Error(message);
}

}  // namespace

const char* to_string(Functional::Kind kind) {
  switch (kind) {
    case Functional::Kind::kQuadratic: return "quadratic";
    case Functional::Kind::kMaxAffine: return "max-affine";
    case Functional::Kind::kComposite: return "composite";
    case Functional::Kind::kNorm: return "norm";
  }
  return "unknown";
}

Functional Functional::quadratic(Matrix Q, Vector b) {
  require(Q.rows() == Q.cols() && Q.rows() == b.size() && b.size() >= 1,
          "quadratic: Q must be square and match b");
  require((Q - Q.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + Q.cwiseAbs().maxCoeff()),
          "quadratic: Q must be symmetric");
  Functional f(Kind::kQuadratic, static_cast<int>(b.size()));
  f.Q_ = std::move(Q);
  f.b_ = std::move(b);
  return f;
}

Functional Functional::max_affine(Matrix A, Vector c) {
  require(A.rows() >= 1 && A.cols() >= 1 && A.rows() == c.size(),
          "max-affine: A rows must match offsets");
  Functional f(Kind::kMaxAffine, static_cast<int>(A.cols()));
  f.A_ = std::move(A);
  f.c_ = std::move(c);
  return f;
}

Functional Functional::affine(Vector a, double c) {
  Matrix A = a.transpose();
  return max_affine(std::move(A), Vector::Constant(1, c));
}

Functional Functional::composite(Matrix Q, Vector b, double l1_weight) {
  require(l1_weight >= 0.0, "composite: l1 weight must be nonnegative");
  Functional f = quadratic(std::move(Q), std::move(b));
  f.kind_ = Kind::kComposite;
  f.weight_ = l1_weight;
  return f;
}

Functional Functional::norm(int n, double scale) {
  require(n >= 1 && scale > 0.0, "norm: need n >= 1 and positive scale");
  Functional f(Kind::kNorm, n);
  f.weight_ = scale;
  return f;
}

int Functional::active_row(const Vector& x) const {
  require(kind_ == Kind::kMaxAffine, "active_row: not a max-affine functional");
  const Vector values = A_ * x + c_;
  Eigen::Index best = 0;
  values.maxCoeff(&best);
  return static_cast<int>(best);
}

double Functional::smooth_value(const Vector& x) const {
  require(kind_ == Kind::kQuadratic || kind_ == Kind::kComposite, "smooth part undefined");
  return 0.5 * x.dot(Q_ * x) - b_.dot(x);
}

Vector Functional::smooth_gradient(const Vector& x) const {
  require(kind_ == Kind::kQuadratic || kind_ == Kind::kComposite, "smooth part undefined");
  return Q_ * x - b_;
}

Regularizer Functional::regularizer() const {
  return kind_ == Kind::kComposite ? Regularizer::l1(weight_) : Regularizer::none();
}

double Functional::value(const Vector& x) const {
  if (x.size() != dim_) throw Error("functional: dimension mismatch");
  switch (kind_) {
    case Kind::kQuadratic: return smooth_value(x);
    case Kind::kComposite: return smooth_value(x) + weight_ * x.lpNorm<1>();
    case Kind::kMaxAffine: return (A_ * x + c_).maxCoeff();
    case Kind::kNorm: return weight_ * x.norm();
  }
  return 0.0;
}

Vector Functional::subgradient(const Vector& x) const {
  if (x.size() != dim_) throw Error("functional: dimension mismatch");
  switch (kind_) {
    case Kind::kQuadratic: return smooth_gradient(x);
    case Kind::kComposite: return smooth_gradient(x) + regularizer().subgradient(x);
    case Kind::kMaxAffine: return A_.row(active_row(x)).transpose();
    case Kind::kNorm: {
      const double r = x.norm();
      if (r == 0.0) return Vector::Zero(dim_);
      return (weight_ / r) * x;
    }
  }
  return Vector::Zero(dim_);
}

Vector Functional::affine_slope() const {
  require(is_affine(), "affine_slope: functional is not affine");
  return A_.row(0).transpose();
}

double Functional::affine_offset() const {
  require(is_affine(), "affine_offset: functional is not affine");
  return c_[0];
}

// -- ProblemSpec ----------------------------------------------------------------

int ProblemSpec::dim() const {
  if (game) return static_cast<int>(game->rows() + game->cols());
  return set.dim();
}

ProxSetup ProblemSpec::setup() const {
  if (game) {
    return ProxSetup::product({ProxSetup::entropy_simplex(static_cast<int>(game->rows())),
                               ProxSetup::entropy_simplex(static_cast<int>(game->cols()))});
  }
  if (prox == ProxKind::kNegativeEntropy) return ProxSetup(NormKind::kL1, prox, set);
  return ProxSetup::euclidean(set);
}

double ProblemSpec::constraint_value(const Vector& x) const {
  double g = -std::numeric_limits<double>::infinity();
  for (const auto& c : constraints) g = std::max(g, c.value(x));
  return g;
}

int ProblemSpec::active_constraint(const Vector& x) const {
  require(!constraints.empty(), "problem has no constraints");
  int best = 0;
  double value = constraints[0].value(x);
  for (std::size_t i = 1; i < constraints.size(); ++i) {
    const double v = constraints[i].value(x);
    if (v > value) {
      value = v;
      best = static_cast<int>(i);
    }
  }
  return best;
}

Vector ProblemSpec::constraint_subgradient(const Vector& x) const {
  return constraints[active_constraint(x)].subgradient(x);
}

void ProblemSpec::check() const {
  if (game) {
    require(game->rows() >= 1 && game->cols() >= 1, "game matrix must be nonempty");
  } else {
    require(objective.dim() == set.dim(), "objective dimension does not match the set");
    for (const auto& c : constraints) {
      require(c.dim() == set.dim(), "constraint dimension does not match the set");
    }
    if (prox == ProxKind::kNegativeEntropy) {
      require(set.kind() == FeasibleSet::Kind::kSimplex, "entropy prox requires the simplex");
    }
    if (objective.kind() == Functional::Kind::kQuadratic ||
        objective.kind() == Functional::Kind::kComposite) {
      const Eigen::SelfAdjointEigenSolver<Matrix> eig(objective.Q(), Eigen::EigenvaluesOnly);
      require(eig.eigenvalues().minCoeff() >= -1e-10, "quadratic Q must be positive semidefinite");
    }
  }
  if (optimum) {
    require(optimum->point.size() == dim(), "reference optimum has wrong dimension");
    require(setup().contains(optimum->point, 1e-9), "reference optimum is not feasible");
    if (!constraints.empty()) {
      require(constraint_value(optimum->point) <= 1e-9, "reference optimum violates constraints");
    }
  }
}

}  // namespace adaptopt
