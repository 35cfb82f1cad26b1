#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ima/types.hpp"

namespace ima {

enum class Domain {
  kWhole,         // all of R^d
  kUnitCube,      // [0, 1]^d
  kOpenUnitCube,  // (0, 1)^d
};

/// Counters filled by evaluations that may clamp intermediate values.
struct EvalStats {
  std::size_t cdf_clamps = 0;
};

/// Map s -> x from R^d (or a cube) into R^m with an analytic Jacobian.
/// Implementations are immutable; eval and jacobian are thread-safe.
class MixingMap {
 public:
  virtual ~MixingMap() = default;

  virtual int latent_dim() const = 0;
  virtual int observed_dim() const = 0;
  virtual Domain domain() const { return Domain::kWhole; }
  virtual std::string family() const = 0;

  virtual Vector eval(const Vector& s, EvalStats* stats = nullptr) const = 0;
  virtual Matrix jacobian(const Vector& s, EvalStats* stats = nullptr) const = 0;
};

using MapPtr = std::shared_ptr<const MixingMap>;

/// Throws OutOfDomain when s has the wrong size, is non-finite, or lies outside
/// the declared domain.
void check_in_domain(const MixingMap& map, const Vector& s);

/// x = A s + b.
class LinearMap final : public MixingMap {
 public:
  explicit LinearMap(Matrix a, std::optional<Vector> offset = std::nullopt);

  int latent_dim() const override { return static_cast<int>(a_.cols()); }
  int observed_dim() const override { return static_cast<int>(a_.rows()); }
  std::string family() const override { return "linear"; }

  Vector eval(const Vector& s, EvalStats* stats = nullptr) const override;
  Matrix jacobian(const Vector& s, EvalStats* stats = nullptr) const override;

  const Matrix& matrix() const { return a_; }

 private:
  Matrix a_;
  Vector b_;
};

/// Sinusoidal C^1 ramp of half-width eps: 0 below -eps, 1 above eps.
double smooth_step(double s, double eps);
/// Derivative of smooth_step; zero outside (-eps, eps].
double smooth_step_derivative(double s, double eps);

/// Central differences (f(s + h e_k) - f(s - h e_k)) / 2h, column by column.
/// Every probe point must lie in the map's domain.
Matrix jacobian_fd(const MixingMap& map, const Vector& s, double h);

/// Axis-aligned box used by the injectivity probe.
struct Box {
  Vector lo;
  Vector hi;
};

struct InjectivityReport {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double min_ratio = 0.0;  // min ||f(s) - f(s')|| / ||s - s'||
  std::size_t guided_pairs = 0;
};

/// Statistical injectivity check. Half of the pairs are uniform in the box;
/// the other half displace s along the right singular vector of J_f(s) with
/// the smallest singular value, which is where a collapse would show first.
/// A violation is a pair with ||s - s'|| >= 1e-6 whose images are closer than
/// 1e-9. Maps with a bounded domain use it when no box is given.
InjectivityReport injectivity_probe(const MixingMap& map, std::size_t n_pairs, std::uint64_t seed,
                                    std::optional<Box> box = std::nullopt);

}  // namespace ima
