#include "ima/mpa.hpp"

#include <algorithm>
#include <cmath>

#include "ima/errors.hpp"

namespace ima {

namespace {

double clamp_level(double u, EvalStats* stats) {
  if (u < kCdfClamp) {
    if (stats) ++stats->cdf_clamps;
    return kCdfClamp;
  }
  if (u > 1.0 - kCdfClamp) {
    if (stats) ++stats->cdf_clamps;
    return 1.0 - kCdfClamp;
  }
  return u;
}

// Phi^{-1}(F(x)), using the survival function in the upper half.
double gaussianize(const UnivariateLaw& law, double x, EvalStats* stats) {
  const double lower = law.cdf(x);
  if (lower <= 0.5) return normal_quantile(clamp_level(lower, stats));
  return -normal_quantile(clamp_level(law.sf(x), stats));
}

// F^{-1}(Phi(z)), mirrored through the upper tail for z > 0.
double degaussianize(const UnivariateLaw& law, double z, EvalStats* stats) {
  if (z <= 0.0) return law.quantile(clamp_level(normal_cdf(z), stats));
  return law.quantile_upper(clamp_level(normal_sf(z), stats));
}

}  // namespace

Matrix rotation_2d(double radians) {
  Matrix r(2, 2);
  r << std::cos(radians), -std::sin(radians), std::sin(radians), std::cos(radians);
  return r;
}

bool is_signed_permutation(const Matrix& r, double tol) {
  if (r.rows() != r.cols()) return false;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    int big = 0;
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      const double a = std::abs(r(i, j));
      if (std::abs(a - 1.0) <= tol) {
        ++big;
      } else if (a > tol) {
        return false;
      }
    }
    if (big != 1) return false;
  }
  return true;
}

RotatedGaussianMPA::RotatedGaussianMPA(FactorialDistribution source, Matrix rotation)
    : source_(std::move(source)), rotation_(std::move(rotation)) {
  const int d = source_.dim();
  if (rotation_.rows() != d || rotation_.cols() != d) {
    throw Error(ErrorKind::kDimensionMismatch, "rotation must be d x d");
  }
  const Matrix rtr = rotation_.transpose() * rotation_;
  if ((rtr - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::kDomainError, "rotation is not orthogonal to 1e-12");
  }
}

RotatedGaussianMPA::Trace RotatedGaussianMPA::run(const Vector& s, EvalStats* stats) const {
  const int d = source_.dim();
  if (s.size() != d) throw Error(ErrorKind::kDimensionMismatch, "latent vector has wrong size");
  Trace tr;
  tr.z.resize(d);
  for (int i = 0; i < d; ++i) {
    if (!source_.component(i).in_interior(s(i))) {
      throw Error(ErrorKind::kSupportError, "s_" + std::to_string(i) + " outside source support");
    }
    tr.z(i) = gaussianize(source_.component(i), s(i), stats);
  }
  tr.rotated = rotation_ * tr.z;
  tr.y.resize(d);
  for (int i = 0; i < d; ++i) tr.y(i) = degaussianize(source_.component(i), tr.rotated(i), stats);
  return tr;
}

Vector RotatedGaussianMPA::eval(const Vector& s, EvalStats* stats) const {
  return run(s, stats).y;
}

Matrix RotatedGaussianMPA::jacobian(const Vector& s, EvalStats* stats) const {
  const Trace tr = run(s, stats);
  const int d = source_.dim();
  Vector d_in(d);
  Vector d_out(d);
  for (int i = 0; i < d; ++i) {
    d_in(i) = source_.component(i).density(s(i)) / normal_pdf(tr.z(i));
    d_out(i) = normal_pdf(tr.rotated(i)) / source_.component(i).density(tr.y(i));
  }
  return d_out.asDiagonal() * rotation_ * d_in.asDiagonal();
}

Vector mpa_forward(const RotatedGaussianMPA& a, const Vector& s, EvalStats* stats) {
  return a.eval(s, stats);
}

Matrix mpa_jacobian(const RotatedGaussianMPA& a, const Vector& s, EvalStats* stats) {
  return a.jacobian(s, stats);
}

}  // namespace ima
