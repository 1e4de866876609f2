#include "adaptopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

namespace adaptopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_log(double v) { return std::log(std::max(v, kEntropyFloor)); }

bool all_finite(const Vector& x) { return x.allFinite(); }

Vector project_simplex(const Vector& x) {
  const Eigen::Index n = x.size();
  std::vector<double> sorted(x.data(), x.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  Vector out = (x.array() - theta).max(0.0);
  return out;
}

Vector project_halfspace(const Vector& y, const Halfspace& h) {
  const double excess = h.normal.dot(y) - h.offset;
  if (excess <= 0.0) return y;
  return y - (excess / h.normal.squaredNorm()) * h.normal;
}

double max_violation(const std::vector<Halfspace>& hs, const Vector& x) {
  double worst = 0.0;
  for (const auto& h : hs) worst = std::max(worst, h.normal.dot(x) - h.offset);
  return worst;
}

// Dykstra's alternating projections onto an intersection of halfspaces.
Vector project_dykstra(const std::vector<Halfspace>& hs, const Vector& x0, int* iterations) {
  Vector x = x0;
  std::vector<Vector> corrections(hs.size(), Vector::Zero(x0.size()));
  int it = 0;
  for (; it < kInnerIterationCap; ++it) {
    const Vector previous = x;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const Vector y = x + corrections[i];
      x = project_halfspace(y, hs[i]);
      corrections[i] = y - x;
    }
    if (max_violation(hs, x) <= 0.5 * kFeasibilityTol &&
        (x - previous).lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      break;
    }
  }
  if (iterations != nullptr) *iterations = it + 1;
  return x;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw Error(message);
}

}  // namespace

const char* to_string(NormKind kind) { return kind == NormKind::kL1 ? "l1" : "l2"; }

const char* to_string(ProxKind kind) {
  return kind == ProxKind::kSquaredEuclidean ? "squared-euclidean" : "negative-entropy";
}

const char* to_string(FeasibleSet::Kind kind) {
  switch (kind) {
    case FeasibleSet::Kind::kWholeSpace: return "whole-space";
    case FeasibleSet::Kind::kBox: return "box";
    case FeasibleSet::Kind::kBall: return "euclidean-ball";
    case FeasibleSet::Kind::kSimplex: return "standard-simplex";
    case FeasibleSet::Kind::kHalfspaces: return "halfspace-intersection";
  }
  return "unknown";
}

// -- FeasibleSet ---------------------------------------------------------------

FeasibleSet FeasibleSet::whole_space(int n) {
  require(n >= 1, "feasible set dimension must be >= 1");
  return FeasibleSet(Kind::kWholeSpace, n);
}

FeasibleSet FeasibleSet::box(Vector lo, Vector hi) {
  require(lo.size() >= 1 && lo.size() == hi.size(), "box bounds must have equal nonzero length");
  require(all_finite(lo) && all_finite(hi), "box bounds must be finite");
  require((lo.array() <= hi.array()).all(), "box requires lo <= hi");
  FeasibleSet s(Kind::kBox, static_cast<int>(lo.size()));
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  return s;
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  require(center.size() >= 1 && all_finite(center), "ball center must be finite");
  require(std::isfinite(radius) && radius > 0.0, "ball radius must be positive");
  FeasibleSet s(Kind::kBall, static_cast<int>(center.size()));
  s.center_ = std::move(center);
  s.radius_ = radius;
  return s;
}

FeasibleSet FeasibleSet::simplex(int n) {
  require(n >= 1, "simplex dimension must be >= 1");
  return FeasibleSet(Kind::kSimplex, n);
}

FeasibleSet FeasibleSet::halfspaces(int n, std::vector<Halfspace> constraints) {
  require(n >= 1, "feasible set dimension must be >= 1");
  for (const auto& h : constraints) {
    require(h.normal.size() == n, "halfspace normal has wrong dimension");
    require(h.normal.squaredNorm() > 0.0, "halfspace normal must be nonzero");
    require(all_finite(h.normal) && std::isfinite(h.offset), "halfspace data must be finite");
  }
  FeasibleSet s(Kind::kHalfspaces, n);
  s.halfspaces_ = std::move(constraints);
  // Feasibility probe: project the origin and check membership.
  const Vector probe = project_dykstra(s.halfspaces_, Vector::Zero(n), nullptr);
  require(max_violation(s.halfspaces_, probe) <= 1e-9, "halfspace intersection is empty");
  return s;
}

bool FeasibleSet::bounded() const {
  return kind_ == Kind::kBox || kind_ == Kind::kBall || kind_ == Kind::kSimplex;
}

bool FeasibleSet::contains(const Vector& x, double tol) const {
  if (x.size() != dim_ || !all_finite(x)) return false;
  switch (kind_) {
    case Kind::kWholeSpace:
      return true;
    case Kind::kBox:
      return ((x - lo_).array() >= -tol).all() && ((hi_ - x).array() >= -tol).all();
    case Kind::kBall:
      return (x - center_).norm() <= radius_ + tol;
    case Kind::kSimplex:
      return (x.array() >= -tol).all() &&
             std::abs(x.sum() - 1.0) <= tol * std::max(1.0, static_cast<double>(dim_));
    case Kind::kHalfspaces:
      return max_violation(halfspaces_, x) <= tol;
  }
  return false;
}

Vector FeasibleSet::project(const Vector& x) const {
  if (x.size() != dim_) throw Error("projection: dimension mismatch");
  switch (kind_) {
    case Kind::kWholeSpace:
      return x;
    case Kind::kBox:
      return x.cwiseMax(lo_).cwiseMin(hi_);
    case Kind::kBall: {
      const Vector d = x - center_;
      const double r = d.norm();
      if (r <= radius_) return x;
      return center_ + (radius_ / r) * d;
    }
    case Kind::kSimplex:
      return project_simplex(x);
    case Kind::kHalfspaces:
      return project_dykstra(halfspaces_, x, nullptr);
  }
  return x;
}

double FeasibleSet::support(const Vector& c) const {
  if (c.size() != dim_) throw Error("support: dimension mismatch");
  switch (kind_) {
    case Kind::kWholeSpace:
      if (c.isZero(0.0)) return 0.0;
      throw Error("unbounded set");
    case Kind::kBox: {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += c[i] > 0.0 ? c[i] * hi_[i] : c[i] * lo_[i];
      return s;
    }
    case Kind::kBall:
      return c.dot(center_) + radius_ * c.norm();
    case Kind::kSimplex:
      return c.maxCoeff();
    case Kind::kHalfspaces:
      throw Error("support function unavailable for halfspace-intersection sets");
  }
  return kInf;
}

Vector FeasibleSet::support_point(const Vector& c) const {
  if (c.size() != dim_) throw Error("support_point: dimension mismatch");
  switch (kind_) {
    case Kind::kWholeSpace:
      if (c.isZero(0.0)) return Vector::Zero(dim_);
      throw Error("unbounded set");
    case Kind::kBox: {
      Vector p(dim_);
      for (int i = 0; i < dim_; ++i) p[i] = c[i] > 0.0 ? hi_[i] : lo_[i];
      return p;
    }
    case Kind::kBall: {
      const double r = c.norm();
      if (r == 0.0) return center_;
      return center_ + (radius_ / r) * c;
    }
    case Kind::kSimplex: {
      Eigen::Index best = 0;
      c.maxCoeff(&best);  // first maximal index
      return Vector::Unit(dim_, best);
    }
    case Kind::kHalfspaces:
      throw Error("support function unavailable for halfspace-intersection sets");
  }
  return Vector::Zero(dim_);
}

std::string FeasibleSet::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(" << dim_ << ")";
  return os.str();
}

// -- ProxSetup -----------------------------------------------------------------

ProxSetup::ProxSetup(NormKind norm, ProxKind prox, FeasibleSet set) {
  if (prox == ProxKind::kNegativeEntropy) {
    require(set.kind() == FeasibleSet::Kind::kSimplex,
            "negative-entropy prox function requires the standard simplex");
    require(norm == NormKind::kL1, "negative-entropy is 1-strongly convex only w.r.t. l1");
  } else {
    require(norm == NormKind::kL2, "squared-euclidean prox is 1-strongly convex only w.r.t. l2");
  }
  dim_ = set.dim();
  blocks_.push_back(ProxBlock{norm, prox, std::move(set), 0});
}

ProxSetup ProxSetup::euclidean(FeasibleSet set) {
  return ProxSetup(NormKind::kL2, ProxKind::kSquaredEuclidean, std::move(set));
}

ProxSetup ProxSetup::entropy_simplex(int n) {
  return ProxSetup(NormKind::kL1, ProxKind::kNegativeEntropy, FeasibleSet::simplex(n));
}

ProxSetup ProxSetup::product(const std::vector<ProxSetup>& factors) {
  require(!factors.empty(), "product setup needs at least one factor");
  ProxSetup out;
  int offset = 0;
  for (const auto& f : factors) {
    for (const auto& b : f.blocks_) {
      ProxBlock copy = b;
      copy.offset = offset + b.offset;
      out.blocks_.push_back(std::move(copy));
    }
    offset += f.dim_;
  }
  out.dim_ = offset;
  return out;
}

const ProxBlock& ProxSetup::block() const {
  if (blocks_.size() != 1) throw Error("setup is a product; no single block");
  return blocks_.front();
}

bool ProxSetup::bounded() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const ProxBlock& b) { return b.set.bounded(); });
}

bool ProxSetup::contains(const Vector& x, double tol) const {
  if (x.size() != dim_) return false;
  for (const auto& b : blocks_) {
    if (!b.set.contains(x.segment(b.offset, b.set.dim()), tol)) return false;
  }
  return true;
}

void check_dim(const ProxSetup& setup, const Vector& x, const char* what) {
  if (x.size() != setup.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (got " << x.size() << ", expected " << setup.dim() << ")";
    throw Error(os.str());
  }
}

// -- Regularizer / LocalModel ------------------------------------------------------

double Regularizer::value(const Vector& x) const {
  switch (kind) {
    case Kind::kNone: return 0.0;
    case Kind::kL1: return weight * x.lpNorm<1>();
    case Kind::kSquaredL2: return 0.5 * weight * x.squaredNorm();
  }
  return 0.0;
}

Vector Regularizer::subgradient(const Vector& x) const {
  switch (kind) {
    case Kind::kNone: return Vector::Zero(x.size());
    case Kind::kL1: {
      Vector s(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) s[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
      return weight * s;
    }
    case Kind::kSquaredL2: return weight * x;
  }
  return Vector::Zero(x.size());
}

double Regularizer::prox_coordinate(double c, double L) const {
  switch (kind) {
    case Kind::kNone: return c;
    case Kind::kL1: {
      const double t = weight / L;
      if (c > t) return c - t;
      if (c < -t) return c + t;
      return 0.0;
    }
    case Kind::kSquaredL2: return L * c / (L + weight);
  }
  return c;
}

LocalModel::LocalModel(Vector anchor, Vector slope, Regularizer h)
    : anchor_(std::move(anchor)), slope_(std::move(slope)), h_(h) {
  if (anchor_.size() != slope_.size()) throw Error("model: anchor/slope dimension mismatch");
  h_anchor_ = h_.value(anchor_);
}

double LocalModel::operator()(const Vector& y) const {
  if (y.size() == anchor_.size() && y == anchor_) return 0.0;
  double v = slope_.dot(y - anchor_);
  if (h_.active()) v += h_.value(y) - h_anchor_;
  return v;
}

Vector LocalModel::subgradient(const Vector& y) const {
  if (!h_.active()) return slope_;
  return slope_ + h_.subgradient(y);
}

// -- norms & divergences ---------------------------------------------------------

namespace {

double block_bregman(const ProxBlock& b, const Eigen::Ref<const Vector>& y,
                     const Eigen::Ref<const Vector>& x) {
  if (b.prox == ProxKind::kSquaredEuclidean) return 0.5 * (y - x).squaredNorm();
  double v = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double yi = y[i];
    const double xi = std::max(x[i], kEntropyFloor);
    if (yi > 0.0) v += yi * (safe_log(yi) - std::log(xi));
    v += xi - std::max(yi, 0.0);
  }
  return std::max(v, 0.0);
}

double block_norm(const ProxBlock& b, const Eigen::Ref<const Vector>& x) {
  return b.norm == NormKind::kL2 ? x.norm() : x.lpNorm<1>();
}

double block_dual_norm(const ProxBlock& b, const Eigen::Ref<const Vector>& g) {
  return b.norm == NormKind::kL2 ? g.norm() : g.lpNorm<Eigen::Infinity>();
}

}  // namespace

double bregman(const ProxSetup& setup, const Vector& y, const Vector& x) {
  check_dim(setup, y, "bregman");
  check_dim(setup, x, "bregman");
  double v = 0.0;
  for (const auto& b : setup.blocks()) {
    const int n = b.set.dim();
    v += block_bregman(b, y.segment(b.offset, n), x.segment(b.offset, n));
  }
  return v;
}

double primal_norm(const ProxSetup& setup, const Vector& x) {
  check_dim(setup, x, "norm");
  if (!setup.is_product()) return block_norm(setup.block(), x);
  double s = 0.0;
  for (const auto& b : setup.blocks()) {
    const double v = block_norm(b, x.segment(b.offset, b.set.dim()));
    s += v * v;
  }
  return std::sqrt(s);
}

double dual_norm(const ProxSetup& setup, const Vector& g) {
  check_dim(setup, g, "dual_norm");
  if (!setup.is_product()) return block_dual_norm(setup.block(), g);
  double s = 0.0;
  for (const auto& b : setup.blocks()) {
    const double v = block_dual_norm(b, g.segment(b.offset, b.set.dim()));
    s += v * v;
  }
  return std::sqrt(s);
}

double prox_function(const ProxSetup& setup, const Vector& x) {
  check_dim(setup, x, "prox_function");
  double v = 0.0;
  for (const auto& b : setup.blocks()) {
    const auto xs = x.segment(b.offset, b.set.dim());
    if (b.prox == ProxKind::kSquaredEuclidean) {
      v += 0.5 * xs.squaredNorm();
    } else {
      for (Eigen::Index i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0) v += xs[i] * std::log(xs[i]);
      }
    }
  }
  return v;
}

Vector prox_center(const ProxSetup& setup) {
  Vector x(setup.dim());
  for (const auto& b : setup.blocks()) {
    const int n = b.set.dim();
    if (b.prox == ProxKind::kNegativeEntropy) {
      x.segment(b.offset, n).setConstant(1.0 / n);
    } else {
      x.segment(b.offset, n) = b.set.project(Vector::Zero(n));
    }
  }
  return x;
}

double support(const ProxSetup& setup, const Vector& c) {
  check_dim(setup, c, "support");
  double s = 0.0;
  for (const auto& b : setup.blocks()) s += b.set.support(c.segment(b.offset, b.set.dim()));
  return s;
}

Vector support_point(const ProxSetup& setup, const Vector& c) {
  check_dim(setup, c, "support_point");
  Vector p(setup.dim());
  for (const auto& b : setup.blocks()) {
    p.segment(b.offset, b.set.dim()) = b.set.support_point(c.segment(b.offset, b.set.dim()));
  }
  return p;
}

double optimality_residual(const ProxSetup& setup, const Vector& x, const Vector& grad) {
  check_dim(setup, x, "optimality_residual");
  double r = 0.0;
  for (const auto& b : setup.blocks()) {
    const int n = b.set.dim();
    const Vector gs = grad.segment(b.offset, n);
    if (b.set.kind() == FeasibleSet::Kind::kWholeSpace) {
      // Unbounded: the certified residual is finite only at stationarity;
      // the dual norm of the gradient stands in for it.
      r += block_dual_norm(b, gs);
    } else {
      r += gs.dot(x.segment(b.offset, n)) + b.set.support(-gs);
    }
  }
  return std::max(r, 0.0);
}

// -- prox steps ----------------------------------------------------------------

namespace {

ProxBlock single_block_view(const ProxBlock& b) {
  ProxBlock copy = b;
  copy.offset = 0;
  return copy;
}

ProxResult general_prox(const ProxBlock& b, const Vector& z, const LocalModel& model, double L,
                        double tol) {
  if (model.regularizer().kind == Regularizer::Kind::kL1) {
    throw Error(std::string("unsupported prox subproblem: l1 term on ") + b.set.describe());
  }
  const ProxSetup local(b.norm, b.prox, b.set);
  const Vector grad_d_z = b.prox == ProxKind::kSquaredEuclidean
                              ? Vector(z)
                              : Vector(z.unaryExpr([](double v) { return safe_log(v) + 1.0; }));
  auto grad_d = [&](const Vector& x) -> Vector {
    if (b.prox == ProxKind::kSquaredEuclidean) return x;
    return x.unaryExpr([](double v) { return safe_log(v) + 1.0; });
  };
  auto phi = [&](const Vector& x) { return model(x) + L * bregman(local, x, z); };
  auto grad_phi = [&](const Vector& x) -> Vector {
    return model.subgradient(x) + L * (grad_d(x) - grad_d_z);
  };

  ProxResult result;
  result.closed_form = false;
  Vector x = b.set.project(z);
  double step = 1.0 / (L + model.regularizer().weight);
  for (int it = 0; it < kInnerIterationCap; ++it) {
    const Vector g = grad_phi(x);
    const double residual = optimality_residual(local, x, g);
    if (residual <= tol) {
      result.point = x;
      result.residual = residual;
      result.inner_iterations = it;
      return result;
    }
    const double fx = phi(x);
    for (int bt = 0; bt < 60; ++bt) {
      const Vector candidate = b.set.project(x - step * g);
      const Vector d = candidate - x;
      if (phi(candidate) <= fx + g.dot(d) + d.squaredNorm() / (2.0 * step) || d.squaredNorm() == 0.0) {
        x = candidate;
        break;
      }
      step *= 0.5;
    }
    step *= 1.5;
  }
  throw SolverError("prox_step: inner solver did not reach tolerance within " +
                    std::to_string(kInnerIterationCap) + " iterations on " + b.set.describe());
}

ProxResult block_prox(const ProxBlock& b, const Vector& z, const LocalModel& model, double L,
                      double tol) {
  const auto& h = model.regularizer();
  const Vector& g = model.slope();
  const auto kind = b.set.kind();
  ProxResult r;

  if (b.prox == ProxKind::kNegativeEntropy) {
    // On the simplex ||x||_1 = 1, so an l1 term is constant.
    if (!h.active() || h.kind == Regularizer::Kind::kL1) {
      Vector s(z.size());
      for (Eigen::Index i = 0; i < z.size(); ++i) s[i] = safe_log(z[i]) - g[i] / L;
      const double m = s.maxCoeff();
      Vector x = (s.array() - m).exp();
      x /= x.sum();
      r.point = std::move(x);
      return r;
    }
    return general_prox(b, z, model, L, tol);
  }

  if (!h.active()) {
    r.point = b.set.project(z - g / L);
  } else if (h.kind == Regularizer::Kind::kSquaredL2) {
    r.point = b.set.project((L * z - g) / (L + h.weight));
  } else if (kind == FeasibleSet::Kind::kWholeSpace || kind == FeasibleSet::Kind::kBox) {
    Vector x(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) x[i] = h.prox_coordinate(z[i] - g[i] / L, L);
    r.point = kind == FeasibleSet::Kind::kBox ? b.set.project(x) : x;
  } else if (kind == FeasibleSet::Kind::kSimplex) {
    r.point = b.set.project(z - (g.array() + h.weight).matrix() / L);
  } else {
    return general_prox(b, z, model, L, tol);
  }
  if (kind == FeasibleSet::Kind::kHalfspaces) {
    r.closed_form = false;
    r.residual = max_violation(b.set.constraints(), r.point);
  }
  return r;
}

}  // namespace

ProxResult prox_step(const ProxSetup& setup, const Vector& center, const LocalModel& model,
                     double L, double tol) {
  check_dim(setup, center, "prox_step");
  check_dim(setup, model.slope(), "prox_step model");
  if (!(L > 0.0) || !std::isfinite(L)) throw Error("prox_step: L must be positive and finite");

  if (!setup.is_product()) return block_prox(setup.block(), center, model, L, tol);

  ProxResult out;
  out.point.resize(setup.dim());
  for (const auto& b : setup.blocks()) {
    const int n = b.set.dim();
    const LocalModel sub(model.anchor().segment(b.offset, n), model.slope().segment(b.offset, n),
                         model.regularizer());
    const ProxResult r = block_prox(single_block_view(b), center.segment(b.offset, n), sub, L, tol);
    out.point.segment(b.offset, n) = r.point;
    out.residual += r.residual;
    out.inner_iterations += r.inner_iterations;
    out.closed_form = out.closed_form && r.closed_form;
  }
  return out;
}

Vector mirror_step(const ProxSetup& setup, const Vector& x, const Vector& scaled_grad) {
  check_dim(setup, scaled_grad, "mirror_step");
  if (scaled_grad.isZero(0.0)) return x;
  return prox_step(setup, x, LocalModel(x, scaled_grad), 1.0).point;
}

double diameter_bound(const ProxSetup& setup, const Vector& x0) {
  check_dim(setup, x0, "diameter_bound");
  double total = 0.0;
  for (const auto& b : setup.blocks()) {
    const int n = b.set.dim();
    const Vector x = x0.segment(b.offset, n);
    switch (b.set.kind()) {
      case FeasibleSet::Kind::kWholeSpace:
        throw Error("unbounded set");
      case FeasibleSet::Kind::kHalfspaces:
        throw Error("unbounded set: no diameter bound for halfspace-intersection sets");
      case FeasibleSet::Kind::kBox: {
        const auto& lo = b.set.lo();
        const auto& hi = b.set.hi();
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
          const double a = x[i] - lo[i];
          const double c = hi[i] - x[i];
          s += std::max(a * a, c * c);
        }
        total += 0.5 * s;
        break;
      }
      case FeasibleSet::Kind::kBall: {
        const double r = (x - b.set.center()).norm() + b.set.radius();
        total += 0.5 * r * r;
        break;
      }
      case FeasibleSet::Kind::kSimplex: {
        // V(., x0) is convex, so its maximum over the simplex sits at a vertex.
        const ProxSetup local(b.norm, b.prox, b.set);
        double best = 0.0;
        for (int i = 0; i < n; ++i) best = std::max(best, bregman(local, Vector::Unit(n, i), x));
        total += best;
        break;
      }
    }
  }
  return total;
}

}  // namespace adaptopt
