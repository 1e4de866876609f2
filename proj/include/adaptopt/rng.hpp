#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace adaptopt {

/// splitmix64 finalizer; the building block of every seeded quantity in the
/// library so that (input, seed) pairs map to the same bits on every platform.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return mix64(seed ^ mix64(value));
}

/// Hash of the exact bit patterns of the coordinates of `x`.
std::uint64_t hash_point(std::uint64_t seed, const Eigen::VectorXd& x);

/// Small deterministic generator (splitmix64 stream). Unlike the std
/// distributions, the uniform/normal mappings here are fixed, so seeded
/// problem instances are byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (one value per call).
  double normal();
  /// Unit-rate exponential.
  double exponential();

  Eigen::VectorXd uniform_vector(int n, double lo, double hi);
  Eigen::VectorXd normal_vector(int n);

 private:
  std::uint64_t state_;
};

}  // namespace adaptopt
