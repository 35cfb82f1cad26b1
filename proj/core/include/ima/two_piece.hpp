#pragma once

#include <cstdint>

#include "ima/distributions.hpp"
#include "ima/mixing.hpp"

namespace ima {

/// Two affine pieces glued along the axis-aligned hyperplane {s_k = c}:
///   f(s) = J0 s            for s_k <= c
///   f(s) = J1 s + c1       for s_k >  c,   c1 = c (J0[:,k] - J1[:,k]).
/// J1 equals J0 except in column k. With eps > 0 the pieces are blended by
/// smooth_step(c - s_k) and smooth_step(s_k - c).
class TwoPieceMap final : public MixingMap {
 public:
  int latent_dim() const override { return static_cast<int>(j0_.cols()); }
  int observed_dim() const override { return static_cast<int>(j0_.rows()); }
  std::string family() const override { return "two_piece"; }

  Vector eval(const Vector& s, EvalStats* stats = nullptr) const override;
  /// For eps = 0 throws OnKnot on the boundary s_k = c.
  Matrix jacobian(const Vector& s, EvalStats* stats = nullptr) const override;

  const Matrix& j0() const { return j0_; }
  const Matrix& j1() const { return j1_; }
  const Vector& offset() const { return c1_; }
  int column() const { return k_; }
  double threshold() const { return c_; }
  double eps() const { return eps_; }
  /// Degenerate construction where the new column equals the old one.
  bool is_linear() const { return linear_; }

  friend TwoPieceMap make_two_piece(const Matrix& j0, int k, const Vector& new_col, double c,
                                    double eps);

 private:
  TwoPieceMap() = default;

  Matrix j0_;
  Matrix j1_;
  Vector c1_;
  int k_ = 0;
  double c_ = 0.0;
  double eps_ = 0.0;
  bool linear_ = false;
};

/// Replaces column k of J0 by new_col. new_col must be linearly independent
/// of J0's columns (RankDeficient otherwise) unless it equals J0[:,k], which
/// yields the degenerate single affine map flagged `is_linear()`.
TwoPieceMap make_two_piece(const Matrix& j0, int k, const Vector& new_col, double c, double eps);

/// Draws J0 and the replacement column from `sampler`.
TwoPieceMap sample_two_piece(int d, int m, int k, double c, double eps,
                             const SphericalSampler& sampler, std::uint64_t seed);

}  // namespace ima
