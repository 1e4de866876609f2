#include "adaptopt/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace adaptopt {

std::uint64_t hash_point(std::uint64_t seed, const Eigen::VectorXd& x) {
  std::uint64_t h = mix64(seed ^ static_cast<std::uint64_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    // -0.0 and 0.0 are the same point.
    const double v = x[i] == 0.0 ? 0.0 : x[i];
    h = hash_combine(h, std::bit_cast<std::uint64_t>(v));
  }
  return h;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::exponential() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  return -std::log(u);
}

Eigen::VectorXd Rng::uniform_vector(int n, double lo, double hi) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

Eigen::VectorXd Rng::normal_vector(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

}  // namespace adaptopt
