#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ima/distributions.hpp"
#include "ima/mixing.hpp"

namespace ima {

/// Bivariate density on a bounding rectangle [lo1, hi1] x [lo2, hi2].
struct JointDensity2D {
  std::string name;
  std::function<double(double, double)> pdf;
  double lo1 = 0.0, hi1 = 1.0, lo2 = 0.0, hi2 = 1.0;
};

/// p(x1) p(x2). Bounded laws use their support; unbounded ones are cut at
/// `tail` probability on each side.
JointDensity2D independent_density(const UnivariateLaw& first, const UnivariateLaw& second,
                                   double tail = 1e-13);
/// Standard bivariate Gaussian with correlation rho on [-half_width, half_width]^2.
JointDensity2D correlated_gaussian_density(double rho, double half_width = 8.0);
/// Density of x = O s for s ~ p_s (d = 2), on [-half_width, half_width]^2.
JointDensity2D rotated_factorial_density(const Matrix& rotation, const FactorialDistribution& p_s,
                                         double half_width);

/// Tabulated two-dimensional Darmois transform
///   g1(x1) = F(x1),  g2(x1, x2) = F(x2 | x1).
/// Tables hold node values and densities; evaluation uses monotone cubic
/// Hermite interpolation along each axis of integration and linear
/// interpolation across x1 rows, so every tabulated CDF stays invertible.
class DarmoisMap {
 public:
  /// Tabulates on `resolution` nodes per axis (>= 128). Cell integrals use
  /// Simpson's rule with the density evaluated at cell midpoints.
  static DarmoisMap build(const JointDensity2D& density, int resolution);

  /// (g1, g2) in (0,1)^2. Throws OutOfTable outside the rectangle.
  Vector forward(const Vector& x) const;
  /// Inverse by per-coordinate bisection on the interpolants.
  Vector inverse(const Vector& u) const;
  /// Lower-triangular Jacobian: (0,0) = p(x1), (1,1) = p(x2 | x1),
  /// (1,0) = central difference of g2 in x1 with a one-cell step, (0,1) = 0.
  Matrix jacobian(const Vector& x) const;

  double marginal_cdf(double x1) const;
  double conditional_cdf(double x1, double x2) const;

  int resolution() const { return n_; }
  double quadrature_mass() const { return mass_; }
  const JointDensity2D& density() const { return density_; }
  const std::vector<double>& x1_nodes() const { return x1_; }
  const std::vector<double>& x2_nodes() const { return x2_; }
  const std::vector<double>& marginal_cdf_table() const { return marg_cdf_; }
  const std::vector<double>& marginal_pdf_table() const { return marg_pdf_; }
  /// Row-major n x n table of F(x2_j | x1_i).
  const std::vector<double>& conditional_cdf_table() const { return cond_cdf_; }

 private:
  double row_cdf(std::size_t row, double x2, double* slope) const;
  double interp_conditional(double x1, double x2, double* slope) const;
  void check_inside(const Vector& x) const;

  JointDensity2D density_;
  int n_ = 0;
  double h1_ = 0.0, h2_ = 0.0;
  double mass_ = 0.0;
  std::vector<double> x1_, x2_;
  std::vector<double> marg_cdf_, marg_pdf_;
  std::vector<double> cond_cdf_, cond_pdf_;
};

/// Darmois inverse as a mixing stage (0,1)^2 -> rectangle. Its Jacobian is
/// the inverse of the lower-triangular forward Jacobian, solved triangularly.
class DarmoisInverseMap final : public MixingMap {
 public:
  explicit DarmoisInverseMap(std::shared_ptr<const DarmoisMap> table) : table_(std::move(table)) {}

  int latent_dim() const override { return 2; }
  int observed_dim() const override { return 2; }
  Domain domain() const override { return Domain::kOpenUnitCube; }
  std::string family() const override { return "darmois_inverse"; }

  Vector eval(const Vector& u, EvalStats* stats = nullptr) const override;
  Matrix jacobian(const Vector& u, EvalStats* stats = nullptr) const override;

  const DarmoisMap& table() const { return *table_; }

 private:
  std::shared_ptr<const DarmoisMap> table_;
};

DarmoisMap darmois_build(const JointDensity2D& density, int resolution);
Matrix darmois_jacobian(const DarmoisMap& dm, const Vector& x);

}  // namespace ima
