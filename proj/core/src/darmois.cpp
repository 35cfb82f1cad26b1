#include "ima/darmois.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ima/errors.hpp"

namespace ima {

namespace {

// Monotone cubic Hermite on one segment (Fritsch-Carlson limited slopes).
double hermite(double y0, double y1, double m0, double m1, double h, double t, double* slope) {
  const double secant = (y1 - y0) / h;
  if (secant <= 0.0) {
    m0 = 0.0;
    m1 = 0.0;
  } else {
    const double a = m0 / secant;
    const double b = m1 / secant;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      m0 = tau * a * secant;
      m1 = tau * b * secant;
    }
  }
  const double t2 = t * t;
  const double t3 = t2 * t;
  if (slope) {
    *slope = (6.0 * t2 - 6.0 * t) * (y0 - y1) / h + (3.0 * t2 - 4.0 * t + 1.0) * m0 +
             (3.0 * t2 - 2.0 * t) * m1;
  }
  return (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * h * m0 +
         (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * h * m1;
}

// Segment index j with nodes[j] <= x <= nodes[j+1] on a uniform grid.
std::size_t segment(double x, double lo, double h, std::size_t n) {
  const double pos = (x - lo) / h;
  const auto j = static_cast<std::ptrdiff_t>(std::floor(pos));
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(j, 0, static_cast<std::ptrdiff_t>(n) - 2));
}

// Bisection for a nondecreasing f on [lo, hi] with f(lo) <= target <= f(hi).
template <class F>
double bisect(F&& f, double lo, double hi, double target) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

JointDensity2D independent_density(const UnivariateLaw& first, const UnivariateLaw& second,
                                   double tail) {
  const auto range = [tail](const UnivariateLaw& law) {
    auto [lo, hi] = law.support();
    if (!std::isfinite(lo)) lo = law.quantile(tail);
    if (!std::isfinite(hi)) hi = law.quantile_upper(tail);
    return std::pair{lo, hi};
  };
  const auto [lo1, hi1] = range(first);
  const auto [lo2, hi2] = range(second);
  JointDensity2D out;
  out.name = "independent(" + to_string(first.kind()) + "," + to_string(second.kind()) + ")";
  out.pdf = [first, second](double a, double b) { return first.density(a) * second.density(b); };
  out.lo1 = lo1;
  out.hi1 = hi1;
  out.lo2 = lo2;
  out.hi2 = hi2;
  return out;
}

JointDensity2D correlated_gaussian_density(double rho, double half_width) {
  if (!(std::abs(rho) < 1.0)) throw Error(ErrorKind::kDomainError, "|rho| must be < 1");
  if (!(half_width > 0.0)) throw Error(ErrorKind::kDomainError, "half width must be > 0");
  const double one_minus = 1.0 - rho * rho;
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(one_minus));
  JointDensity2D out;
  out.name = "correlated_gaussian";
  out.pdf = [rho, one_minus, norm](double a, double b) {
    return norm * std::exp(-(a * a - 2.0 * rho * a * b + b * b) / (2.0 * one_minus));
  };
  out.lo1 = out.lo2 = -half_width;
  out.hi1 = out.hi2 = half_width;
  return out;
}

JointDensity2D rotated_factorial_density(const Matrix& rotation, const FactorialDistribution& p_s,
                                         double half_width) {
  if (p_s.dim() != 2 || rotation.rows() != 2 || rotation.cols() != 2) {
    throw Error(ErrorKind::kDimensionMismatch, "rotated factorial density is two-dimensional");
  }
  if (!(half_width > 0.0)) throw Error(ErrorKind::kDomainError, "half width must be > 0");
  const Matrix rt = rotation.transpose();
  JointDensity2D out;
  out.name = "rotated_factorial";
  out.pdf = [rt, p_s](double a, double b) {
    const double s0 = rt(0, 0) * a + rt(0, 1) * b;
    const double s1 = rt(1, 0) * a + rt(1, 1) * b;
    return p_s.component(0).density(s0) * p_s.component(1).density(s1);
  };
  out.lo1 = out.lo2 = -half_width;
  out.hi1 = out.hi2 = half_width;
  return out;
}

DarmoisMap DarmoisMap::build(const JointDensity2D& density, int resolution) {
  if (resolution < 128) throw Error(ErrorKind::kDomainError, "resolution must be >= 128");
  if (!(density.hi1 > density.lo1 && density.hi2 > density.lo2)) {
    throw Error(ErrorKind::kDomainError, "empty bounding rectangle");
  }
  DarmoisMap dm;
  dm.density_ = density;
  const auto n = static_cast<std::size_t>(resolution);
  dm.n_ = resolution;
  dm.h1_ = (density.hi1 - density.lo1) / static_cast<double>(n - 1);
  dm.h2_ = (density.hi2 - density.lo2) / static_cast<double>(n - 1);
  dm.x1_.resize(n);
  dm.x2_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    dm.x1_[i] = density.lo1 + static_cast<double>(i) * dm.h1_;
    dm.x2_[i] = density.lo2 + static_cast<double>(i) * dm.h2_;
  }
  dm.x1_[n - 1] = density.hi1;
  dm.x2_[n - 1] = density.hi2;

  // Fine grid: coarse nodes at even indices, cell midpoints at odd ones.
  const std::size_t fine = 2 * n - 1;
  std::vector<double> row(fine);
  std::vector<double> row_mass(fine);
  dm.cond_cdf_.assign(n * n, 0.0);
  dm.cond_pdf_.assign(n * n, 0.0);

  for (std::size_t a = 0; a < fine; ++a) {
    const double x1 = density.lo1 + static_cast<double>(a) * 0.5 * dm.h1_;
    for (std::size_t b = 0; b < fine; ++b) {
      const double x2 = density.lo2 + static_cast<double>(b) * 0.5 * dm.h2_;
      const double v = density.pdf(x1, x2);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::kNonPositiveDensity,
                    "density not positive at (" + std::to_string(x1) + ", " + std::to_string(x2) + ")");
      }
      row[b] = v;
    }
    double cum = 0.0;
    const bool coarse = a % 2 == 0;
    const std::size_t i = a / 2;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (coarse) dm.cond_cdf_[i * n + j] = cum;
      cum += dm.h2_ / 6.0 * (row[2 * j] + 4.0 * row[2 * j + 1] + row[2 * j + 2]);
    }
    row_mass[a] = cum;
    if (coarse) {
      dm.cond_cdf_[i * n + n - 1] = cum;
      for (std::size_t j = 0; j < n; ++j) {
        dm.cond_cdf_[i * n + j] /= cum;
        dm.cond_pdf_[i * n + j] = row[2 * j] / cum;
      }
    }
  }

  dm.marg_cdf_.assign(n, 0.0);
  dm.marg_pdf_.assign(n, 0.0);
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dm.marg_cdf_[i] = cum;
    cum += dm.h1_ / 6.0 * (row_mass[2 * i] + 4.0 * row_mass[2 * i + 1] + row_mass[2 * i + 2]);
  }
  dm.marg_cdf_[n - 1] = cum;
  dm.mass_ = cum;
  if (std::abs(cum - 1.0) > 1e-4) {
    throw Error(ErrorKind::kNormalizationError,
                "quadrature mass " + std::to_string(cum) + " deviates from 1 by more than 1e-4");
  }
  for (std::size_t i = 0; i < n; ++i) {
    dm.marg_cdf_[i] /= cum;
    dm.marg_pdf_[i] = row_mass[2 * i] / cum;
  }
  return dm;
}

void DarmoisMap::check_inside(const Vector& x) const {
  if (x.size() != 2 || !x.allFinite() || x(0) < density_.lo1 || x(0) > density_.hi1 ||
      x(1) < density_.lo2 || x(1) > density_.hi2) {
    throw Error(ErrorKind::kOutOfTable, "point outside the tabulated rectangle");
  }
}

double DarmoisMap::marginal_cdf(double x1) const {
  const auto n = static_cast<std::size_t>(n_);
  const std::size_t j = segment(x1, density_.lo1, h1_, n);
  const double t = std::clamp((x1 - x1_[j]) / h1_, 0.0, 1.0);
  return hermite(marg_cdf_[j], marg_cdf_[j + 1], marg_pdf_[j], marg_pdf_[j + 1], h1_, t, nullptr);
}

double DarmoisMap::row_cdf(std::size_t row, double x2, double* slope) const {
  const auto n = static_cast<std::size_t>(n_);
  const std::size_t j = segment(x2, density_.lo2, h2_, n);
  const double t = std::clamp((x2 - x2_[j]) / h2_, 0.0, 1.0);
  const double* c = &cond_cdf_[row * n];
  const double* p = &cond_pdf_[row * n];
  return hermite(c[j], c[j + 1], p[j], p[j + 1], h2_, t, slope);
}

double DarmoisMap::interp_conditional(double x1, double x2, double* slope) const {
  const auto n = static_cast<std::size_t>(n_);
  const std::size_t i = segment(x1, density_.lo1, h1_, n);
  const double lambda = std::clamp((x1 - x1_[i]) / h1_, 0.0, 1.0);
  double s0 = 0.0;
  double s1 = 0.0;
  const double v = (1.0 - lambda) * row_cdf(i, x2, &s0) + lambda * row_cdf(i + 1, x2, &s1);
  if (slope) *slope = (1.0 - lambda) * s0 + lambda * s1;
  return v;
}

double DarmoisMap::conditional_cdf(double x1, double x2) const {
  check_inside(Vector{{x1, x2}});
  return interp_conditional(x1, x2, nullptr);
}

Vector DarmoisMap::forward(const Vector& x) const {
  check_inside(x);
  return Vector{{marginal_cdf(x(0)), interp_conditional(x(0), x(1), nullptr)}};
}

Matrix DarmoisMap::jacobian(const Vector& x) const {
  check_inside(x);
  const auto n = static_cast<std::size_t>(n_);
  const std::size_t j = segment(x(0), density_.lo1, h1_, n);
  const double t = std::clamp((x(0) - x1_[j]) / h1_, 0.0, 1.0);
  double marginal_density = 0.0;
  hermite(marg_cdf_[j], marg_cdf_[j + 1], marg_pdf_[j], marg_pdf_[j + 1], h1_, t, &marginal_density);

  double conditional_density = 0.0;
  interp_conditional(x(0), x(1), &conditional_density);

  const double left = std::max(density_.lo1, x(0) - h1_);
  const double right = std::min(density_.hi1, x(0) + h1_);
  const double cross =
      (interp_conditional(right, x(1), nullptr) - interp_conditional(left, x(1), nullptr)) /
      (right - left);

  Matrix jac(2, 2);
  jac << marginal_density, 0.0, cross, conditional_density;
  return jac;
}

Vector DarmoisMap::inverse(const Vector& u) const {
  if (u.size() != 2 || !(u(0) > 0.0 && u(0) < 1.0 && u(1) > 0.0 && u(1) < 1.0)) {
    throw Error(ErrorKind::kOutOfDomain, "Darmois inverse needs u in (0,1)^2");
  }
  const auto n = static_cast<std::size_t>(n_);
  // x1 from the marginal table.
  auto it = std::upper_bound(marg_cdf_.begin(), marg_cdf_.end(), u(0));
  std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(it - marg_cdf_.begin()), 1, n - 1) - 1;
  const double x1 = bisect([this](double v) { return marginal_cdf(v); }, x1_[j], x1_[j + 1], u(0));

  // x2 from the interpolated conditional row at x1.
  const std::size_t i = segment(x1, density_.lo1, h1_, n);
  const double lambda = std::clamp((x1 - x1_[i]) / h1_, 0.0, 1.0);
  std::size_t lo = 0;
  std::size_t hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    const double v = (1.0 - lambda) * cond_cdf_[i * n + mid] + lambda * cond_cdf_[(i + 1) * n + mid];
    if (v <= u(1)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double x2 = bisect([this, x1](double v) { return interp_conditional(x1, v, nullptr); },
                           x2_[lo], x2_[hi], u(1));
  return Vector{{x1, x2}};
}

Vector DarmoisInverseMap::eval(const Vector& u, EvalStats*) const {
  check_in_domain(*this, u);
  return table_->inverse(u);
}

Matrix DarmoisInverseMap::jacobian(const Vector& u, EvalStats*) const {
  check_in_domain(*this, u);
  const Matrix forward = table_->jacobian(table_->inverse(u));
  return forward.triangularView<Eigen::Lower>().solve(Matrix::Identity(2, 2));
}

DarmoisMap darmois_build(const JointDensity2D& density, int resolution) {
  return DarmoisMap::build(density, resolution);
}

Matrix darmois_jacobian(const DarmoisMap& dm, const Vector& x) { return dm.jacobian(x); }

}  // namespace ima
