#pragma once

// Bregman geometry shared by every solver: feasible sets, prox setups,
// divergences, and the prox / mirror steps.

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace adaptopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kFeasibilityTol = 1e-12;
inline constexpr double kEntropyFloor = 1e-15;
inline constexpr int kInnerIterationCap = 10'000;
inline constexpr double kInnerTol = 1e-12;

/// Precondition / contract violations raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative routine ran out of budget before meeting its criterion.
class SolverError : public Error {
 public:
  using Error::Error;
};

enum class NormKind { kL1, kL2 };
enum class ProxKind { kSquaredEuclidean, kNegativeEntropy };

const char* to_string(NormKind kind);
const char* to_string(ProxKind kind);

/// Closed halfspace {x : <normal, x> <= offset}.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

class FeasibleSet {
 public:
  enum class Kind { kWholeSpace, kBox, kBall, kSimplex, kHalfspaces };

  static FeasibleSet whole_space(int n);
  static FeasibleSet box(Vector lo, Vector hi);
  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet simplex(int n);
  /// Throws if the intersection is empty (checked by a projection probe).
  static FeasibleSet halfspaces(int n, std::vector<Halfspace> constraints);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool bounded() const;
  bool contains(const Vector& x, double tol = kFeasibilityTol) const;

  /// Euclidean projection. Exact for every kind except halfspaces, which
  /// uses Dykstra's alternating projections.
  Vector project(const Vector& x) const;

  /// max_{x in set} <c, x>; throws for unbounded directions.
  double support(const Vector& c) const;
  /// A maximizer of <c, x> over the set; ties go to the lowest index.
  Vector support_point(const Vector& c) const;

  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  const Vector& center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<Halfspace>& constraints() const { return halfspaces_; }

  std::string describe() const;

 private:
  FeasibleSet(Kind kind, int dim) : kind_(kind), dim_(dim) {}

  Kind kind_;
  int dim_;
  Vector lo_, hi_;
  Vector center_;
  double radius_ = 0.0;
  std::vector<Halfspace> halfspaces_;
};

const char* to_string(FeasibleSet::Kind kind);

/// One (norm, prox function, set) triple placed at `offset` in the full
/// coordinate vector.
struct ProxBlock {
  NormKind norm;
  ProxKind prox;
  FeasibleSet set;
  int offset = 0;
};

/// Prox structure: the norm, the distance-generating function d and the
/// feasible set. A setup is either a single block or a product of blocks
/// (saddle problems), with norm ||x|| = sqrt(sum_i ||x_i||_i^2).
///
/// Allowed pairings: squared-euclidean with l2 on any set, negative-entropy
/// with l1 on the standard simplex. Both make d 1-strongly convex.
class ProxSetup {
 public:
  ProxSetup(NormKind norm, ProxKind prox, FeasibleSet set);

  static ProxSetup euclidean(FeasibleSet set);
  static ProxSetup entropy_simplex(int n);
  static ProxSetup product(const std::vector<ProxSetup>& factors);

  int dim() const { return dim_; }
  bool is_product() const { return blocks_.size() > 1; }
  const std::vector<ProxBlock>& blocks() const { return blocks_; }
  /// The single block of a non-product setup.
  const ProxBlock& block() const;
  const FeasibleSet& set() const { return block().set; }

  bool bounded() const;
  bool contains(const Vector& x, double tol = kFeasibilityTol) const;

 private:
  ProxSetup() = default;
  std::vector<ProxBlock> blocks_;
  int dim_ = 0;
};

/// Separable convex term h added to a linear model. Each kind has a
/// coordinate-wise proximal map, which keeps composite prox steps closed-form
/// on boxes.
struct Regularizer {
  enum class Kind { kNone, kL1, kSquaredL2 };
  Kind kind = Kind::kNone;
  double weight = 0.0;

  static Regularizer none() { return {}; }
  static Regularizer l1(double weight) { return {Kind::kL1, weight}; }
  static Regularizer squared_l2(double weight) { return {Kind::kSquaredL2, weight}; }

  bool active() const { return kind != Kind::kNone && weight != 0.0; }
  double value(const Vector& x) const;
  /// A subgradient (sign(0) = 0 for l1).
  Vector subgradient(const Vector& x) const;
  /// argmin_t weight*h(t) + (L/2)(t - c)^2 for one coordinate.
  double prox_coordinate(double c, double L) const;
};

/// A model psi(y) = <slope, y - anchor> + h(y) - h(anchor): linear part plus
/// an optional separable convex term. psi(anchor) = 0 holds exactly.
class LocalModel {
 public:
  LocalModel() = default;
  LocalModel(Vector anchor, Vector slope, Regularizer h = {});

  double operator()(const Vector& y) const;
  const Vector& anchor() const { return anchor_; }
  const Vector& slope() const { return slope_; }
  const Regularizer& regularizer() const { return h_; }
  bool is_linear() const { return !h_.active(); }
  /// A subgradient of psi at y.
  Vector subgradient(const Vector& y) const;

 private:
  Vector anchor_;
  Vector slope_;
  Regularizer h_;
  double h_anchor_ = 0.0;
};

struct ProxResult {
  Vector point;
  /// Certified residual max_y <grad phi(x), x - y> of the subproblem; zero
  /// for closed forms.
  double residual = 0.0;
  int inner_iterations = 0;
  bool closed_form = true;
};

// -- divergences and norms ---------------------------------------------------

/// V(y, x) = d(y) - d(x) - <grad d(x), y - x>.
double bregman(const ProxSetup& setup, const Vector& y, const Vector& x);
double primal_norm(const ProxSetup& setup, const Vector& x);
double dual_norm(const ProxSetup& setup, const Vector& g);
/// Value of the distance-generating function d.
double prox_function(const ProxSetup& setup, const Vector& x);
/// argmin_{x in set} d(x).
Vector prox_center(const ProxSetup& setup);
/// max_{x in set} <c, x>, summed over product blocks.
double support(const ProxSetup& setup, const Vector& c);
Vector support_point(const ProxSetup& setup, const Vector& c);

// -- steps ---------------------------------------------------------------

/// argmin_{x in set} { model(x) + L * V(x, center) }. Closed forms cover
/// linear models on every set kind, and l1 / squared-l2 terms where they stay
/// separable. Anything else falls back to a projected-gradient loop capped
/// at kInnerIterationCap that stops on the certified residual <= tol.
ProxResult prox_step(const ProxSetup& setup, const Vector& center,
                     const LocalModel& model, double L, double tol = kInnerTol);

/// Mirr_x(g) = argmin_{y in set} { <g, y - x> + V(y, x) }.
Vector mirror_step(const ProxSetup& setup, const Vector& x, const Vector& scaled_grad);

/// An upper bound on max_{x in set} V(x, x0). Exact for box, ball and
/// simplex sets; throws "unbounded set" for whole-space.
double diameter_bound(const ProxSetup& setup, const Vector& x0);

/// Sub-gradient optimality residual max_{y in set} <grad, x - y>.
double optimality_residual(const ProxSetup& setup, const Vector& x, const Vector& grad);

void check_dim(const ProxSetup& setup, const Vector& x, const char* what);

}  // namespace adaptopt
