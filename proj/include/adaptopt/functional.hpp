#pragma once

// Convex functionals with exact values and subgradients, and the problem
// descriptor that bundles an objective, constraints and reference data.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adaptopt/geometry.hpp"

namespace adaptopt {

class Functional {
 public:
  enum class Kind { kQuadratic, kMaxAffine, kComposite, kNorm };

  /// 0.5 x'Qx - b'x
  static Functional quadratic(Matrix Q, Vector b);
  /// max_i <a_i, x> + c_i, rows of A are a_i. One row gives an affine map.
  static Functional max_affine(Matrix A, Vector c);
  static Functional affine(Vector a, double c);
  /// 0.5 x'Qx - b'x + weight * ||x||_1
  static Functional composite(Matrix Q, Vector b, double l1_weight);
  /// scale * ||x||_2
  static Functional norm(int n, double scale = 1.0);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  double value(const Vector& x) const;
  /// A subgradient. Max-affine ties resolve to the lowest active row; the
  /// norm uses 0 at the origin; the l1 part uses sign(0) = 0.
  Vector subgradient(const Vector& x) const;
  /// Index of the row attaining the max (max-affine only).
  int active_row(const Vector& x) const;

  /// Smooth part g of a composite g + h (the whole quadratic otherwise).
  double smooth_value(const Vector& x) const;
  Vector smooth_gradient(const Vector& x) const;
  /// The separable nonsmooth part h (none unless composite).
  Regularizer regularizer() const;

  bool is_affine() const { return kind_ == Kind::kMaxAffine && A_.rows() == 1; }
  /// Slope and offset of an affine functional.
  Vector affine_slope() const;
  double affine_offset() const;

  const Matrix& Q() const { return Q_; }
  const Vector& b() const { return b_; }
  const Matrix& A() const { return A_; }
  const Vector& c() const { return c_; }
  double weight() const { return weight_; }

 private:
  Functional(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
  Matrix Q_;
  Vector b_;
  Matrix A_;
  Vector c_;
  double weight_ = 0.0;
};

const char* to_string(Functional::Kind kind);

struct ReferenceOptimum {
  double value = 0.0;
  Vector point;
};

/// Self-contained problem instance. `set` and `prox` describe the geometry
/// the solvers run on; for matrix games `game` holds the payoff matrix and
/// the setup is the product of two simplices.
struct ProblemSpec {
  std::string kind;
  std::uint64_t seed = 0;
  Functional objective = Functional::norm(1);
  std::vector<Functional> constraints;
  FeasibleSet set = FeasibleSet::whole_space(1);
  ProxKind prox = ProxKind::kSquaredEuclidean;
  std::optional<Matrix> game;
  std::optional<ReferenceOptimum> optimum;

  // Known constants of the instance (0 when not applicable).
  double M_f = 0.0;
  double M_g = 0.0;
  double L = 0.0;
  double mu = 0.0;
  double Delta = 0.0;

  int dim() const;
  ProxSetup setup() const;
  /// g(x) = max_p g_p(x); -inf without constraints.
  double constraint_value(const Vector& x) const;
  Vector constraint_subgradient(const Vector& x) const;
  /// Index of the constraint attaining the max (lowest on ties).
  int active_constraint(const Vector& x) const;
  /// Throws on inconsistent data (dimension mismatch, asymmetric Q,
  /// infeasible reference optimum).
  void check() const;
};

}  // namespace adaptopt
