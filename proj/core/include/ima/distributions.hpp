#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ima/rng.hpp"
#include "ima/types.hpp"

namespace ima {

enum class LawKind {
  kUniform,    // (a, b)
  kGaussian,   // (mu, sigma)
  kLaplace,    // (mu, b)
  kTabulated,  // piecewise-linear quantile through equally spaced levels
  kChi,        // norm of a standard Gaussian in R^k; radial laws only
  kConstant,   // point mass at r; radial laws only, has no density
};

std::string to_string(LawKind kind);

/// Univariate law with density, CDF, survival function, quantile and sampler.
/// Tail evaluations go through the survival function so that quantiles stay
/// accurate close to 1.
class UnivariateLaw {
 public:
  static UnivariateLaw uniform(double a, double b);
  static UnivariateLaw gaussian(double mu, double sigma);
  static UnivariateLaw laplace(double mu, double b);
  /// Knots x_0 < ... < x_n are the quantiles at levels i/n.
  static UnivariateLaw tabulated(std::vector<double> quantile_knots);
  static UnivariateLaw chi(int dof);
  static UnivariateLaw constant(double r);

  LawKind kind() const { return kind_; }
  double param(int i) const { return params_[static_cast<std::size_t>(i)]; }
  int dof() const { return dof_; }
  const std::vector<double>& knots() const { return knots_; }

  bool has_density() const { return kind_ != LawKind::kConstant; }
  double density(double x) const;
  double cdf(double x) const;
  double sf(double x) const;

  /// x with cdf(x) = u, for u in (0, 1).
  double quantile(double u) const;
  /// x with sf(x) = q, for q in (0, 1).
  double quantile_upper(double q) const;

  double sample(Rng& rng) const;

  /// Closed support [lo, hi]; infinite ends for unbounded laws.
  std::pair<double, double> support() const;
  /// True when x lies strictly inside the support.
  bool in_interior(double x) const;

  double location() const;
  double scale() const;

 private:
  UnivariateLaw(LawKind kind, double p0, double p1) : kind_(kind), params_{p0, p1} {}

  double bracketed_quantile(double target, bool upper) const;

  LawKind kind_;
  double params_[2];
  int dof_ = 0;
  std::vector<double> knots_;
};

/// Product of independent univariate laws.
class FactorialDistribution {
 public:
  FactorialDistribution() = default;
  explicit FactorialDistribution(std::vector<UnivariateLaw> components);

  static FactorialDistribution iid(const UnivariateLaw& law, int d);

  int dim() const { return static_cast<int>(components_.size()); }
  const UnivariateLaw& component(int i) const { return components_[static_cast<std::size_t>(i)]; }
  const std::vector<UnivariateLaw>& components() const { return components_; }

  double density(const Vector& s) const;
  Vector sample(Rng& rng) const;
  bool in_interior(const Vector& s) const;

 private:
  std::vector<UnivariateLaw> components_;
};

/// X = R * U with U uniform on the unit sphere of R^m and R ~ radial law.
class SphericalSampler {
 public:
  SphericalSampler(int ambient_dim, UnivariateLaw radial_law);

  /// Radial law chi(m): columns are standard Gaussian vectors.
  static SphericalSampler standard_gaussian(int ambient_dim);
  /// Unit radial law: columns uniform on the sphere.
  static SphericalSampler unit(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  const UnivariateLaw& radial_law() const { return radial_; }

  Vector sample(Rng& rng) const;

 private:
  int ambient_dim_;
  UnivariateLaw radial_;
};

/// m x d matrix with i.i.d. spherically symmetric columns. Deterministic for a
/// fixed seed; resampled up to three times when the rank check fails.
Matrix sample_isotropic_matrix(int m, int d, const SphericalSampler& sampler, std::uint64_t seed);

/// Same, drawing from a caller-owned generator.
Matrix sample_isotropic_matrix(int m, int d, const SphericalSampler& sampler, Rng& rng);

std::vector<Vector> sample_factorial(const FactorialDistribution& p_s, int n, std::uint64_t seed);

/// Standard normal CDF, survival function and quantile.
double normal_cdf(double z);
double normal_sf(double z);
double normal_pdf(double z);
double normal_quantile(double u);

}  // namespace ima
