#pragma once

#include <cstdint>
#include <random>

#include "ima/types.hpp"

namespace ima {

/// splitmix64 finalizer; full avalanche on 64-bit inputs.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Sub-seed for stream `index` of a master seed. Independent of the order in
/// which streams are created, so parallel trials reproduce exactly.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

/// Per-task random source. Value type; never share one across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_open(); }

  double normal() { return normal_(engine_); }

  Vector normal_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  std::uint64_t next_u64() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Haar-distributed orthogonal n x n matrix (QR of a Gaussian matrix with
/// the sign of R's diagonal folded into Q).
Matrix random_orthogonal(Eigen::Index n, Rng& rng);

/// m x d matrix with orthonormal columns drawn from the Haar measure.
Matrix random_orthonormal_columns(Eigen::Index m, Eigen::Index d, Rng& rng);

}  // namespace ima
