#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ima/distributions.hpp"
#include "ima/mixing.hpp"

namespace ima {

/// Grid-wise piecewise-affine map on [0,1]^d, optionally smoothed.
///
/// With p = ceil(1/delta) + 1 blocks J^(1..p), coordinate k contributes
///   f_k(s_k) = sum_t (J^(t)[:,k] (s_k - (t-1) delta) + sum_{i<t} J^(i)[:,k] delta) w_t(s_k)
/// where w_t is the indicator of ((t-1) delta, t delta] for eps = 0 and the
/// smooth-step difference step(s - (t-1) delta) - step(s - t delta) for eps > 0.
/// The map is f(s) = sum_k f_k(s_k).
class SmoothGridMap final : public MixingMap {
 public:
  /// Builds from explicit blocks. Checks eps < delta/4 when eps > 0, block
  /// shapes, knot continuity, and (for m > p d) joint column independence.
  SmoothGridMap(double delta, double eps, std::vector<Matrix> blocks);

  int latent_dim() const override { return d_; }
  int observed_dim() const override { return m_; }
  Domain domain() const override { return Domain::kUnitCube; }
  std::string family() const override { return "grid"; }

  Vector eval(const Vector& s, EvalStats* stats = nullptr) const override;
  /// Chain-rule Jacobian. For eps = 0 throws OnKnot at any knot t*delta.
  Matrix jacobian(const Vector& s, EvalStats* stats = nullptr) const override;

  /// Coordinate function f_k(s_k) as an m-vector.
  Vector coordinate_value(int k, double sk) const;
  /// d f_k / d s_k.
  Vector coordinate_derivative(int k, double sk) const;

  double delta() const { return delta_; }
  double eps() const { return eps_; }
  int pieces() const { return p_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Knot positions t*delta for t = 0..p.
  std::vector<double> knots() const;
  /// True if some coordinate lies within eps of a knot.
  bool in_boundary_region(const Vector& s) const;
  /// Exact per-axis measure of {x in [0,1] : |x - knot| < eps for some knot}.
  double boundary_measure_per_axis() const;
  /// Probability that a uniform point of [0,1]^d lands in the boundary region.
  double boundary_probability_uniform() const;

 private:
  // Value of affine piece t (1-based) for coordinate k.
  Vector piece_value(int t, int k, double sk) const;

  int d_ = 0;
  int m_ = 0;
  int p_ = 0;
  double delta_ = 1.0;
  double eps_ = 0.0;
  std::vector<Matrix> blocks_;
  std::vector<Matrix> offsets_;  // offsets_[t-1] = sum_{i<t} J^(i) delta
  std::vector<std::string> warnings_;
};

/// Number of pieces per axis for grid width delta: ceil(1/delta) + 1.
int grid_pieces(double delta);

/// Samples p blocks with i.i.d. spherically symmetric columns from `sampler`.
SmoothGridMap sample_grid_map(int d, int m, double delta, const SphericalSampler& sampler,
                              double eps, std::uint64_t seed);

}  // namespace ima
