#pragma once

#include "ima/distributions.hpp"
#include "ima/mixing.hpp"

namespace ima {

inline constexpr double kCdfClamp = 1e-15;

/// Rotated-Gaussian measure-preserving automorphism
///   a(s) = F^{-1}( Phi( R Phi^{-1}( F(s) ) ) )
/// with F the component-wise source CDF and Phi the standard normal CDF.
/// Upper-tail values are routed through survival functions, and every CDF
/// level is clamped to [1e-15, 1 - 1e-15]; clamps are counted in EvalStats.
class RotatedGaussianMPA final : public MixingMap {
 public:
  /// Requires R^T R = I to 1e-12 and a d x d rotation matching the source.
  RotatedGaussianMPA(FactorialDistribution source, Matrix rotation);

  int latent_dim() const override { return source_.dim(); }
  int observed_dim() const override { return source_.dim(); }
  std::string family() const override { return "rotated_gaussian_mpa"; }

  /// Throws SupportError unless every s_i is strictly inside its support.
  Vector eval(const Vector& s, EvalStats* stats = nullptr) const override;
  /// D_out R D_in with D_in = diag(p_i(s_i) / phi(z_i)) and
  /// D_out = diag(phi(z'_i) / p_i(y_i)).
  Matrix jacobian(const Vector& s, EvalStats* stats = nullptr) const override;

  const FactorialDistribution& source() const { return source_; }
  const Matrix& rotation() const { return rotation_; }

 private:
  struct Trace {
    Vector z;        // Phi^{-1}(F(s))
    Vector rotated;  // R z
    Vector y;        // output
  };
  Trace run(const Vector& s, EvalStats* stats) const;

  FactorialDistribution source_;
  Matrix rotation_;
};

Vector mpa_forward(const RotatedGaussianMPA& a, const Vector& s, EvalStats* stats = nullptr);
Matrix mpa_jacobian(const RotatedGaussianMPA& a, const Vector& s, EvalStats* stats = nullptr);

/// 2x2 rotation by `radians`.
Matrix rotation_2d(double radians);

/// True when R maps every canonical basis vector to +/- another one.
bool is_signed_permutation(const Matrix& r, double tol = 1e-12);

}  // namespace ima
