#include "ima/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ima/errors.hpp"
#include "ima/rng.hpp"

namespace ima {

void check_in_domain(const MixingMap& map, const Vector& s) {
  if (s.size() != map.latent_dim()) {
    throw Error(ErrorKind::kOutOfDomain, "latent vector has size " + std::to_string(s.size()) +
                                             ", expected " + std::to_string(map.latent_dim()));
  }
  if (!s.allFinite()) throw Error(ErrorKind::kOutOfDomain, "latent vector is not finite");
  switch (map.domain()) {
    case Domain::kWhole:
      return;
    case Domain::kUnitCube:
      if ((s.array() < 0.0).any() || (s.array() > 1.0).any()) {
        throw Error(ErrorKind::kOutOfDomain, "point outside [0,1]^d");
      }
      return;
    case Domain::kOpenUnitCube:
      if ((s.array() <= 0.0).any() || (s.array() >= 1.0).any()) {
        throw Error(ErrorKind::kOutOfDomain, "point outside (0,1)^d");
      }
      return;
  }
}

LinearMap::LinearMap(Matrix a, std::optional<Vector> offset) : a_(std::move(a)) {
  if (a_.rows() < a_.cols() || a_.cols() < 1) {
    throw Error(ErrorKind::kDimensionMismatch, "linear map needs m >= d >= 1");
  }
  if (!a_.allFinite()) throw Error(ErrorKind::kNonFinite, "linear map matrix is not finite");
  b_ = offset ? *offset : Vector::Zero(a_.rows());
  if (b_.size() != a_.rows()) throw Error(ErrorKind::kDimensionMismatch, "offset size differs from m");
}

Vector LinearMap::eval(const Vector& s, EvalStats*) const {
  check_in_domain(*this, s);
  return a_ * s + b_;
}

Matrix LinearMap::jacobian(const Vector& s, EvalStats*) const {
  check_in_domain(*this, s);
  return a_;
}

double smooth_step(double s, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::kDomainError, "smooth_step needs eps > 0");
  if (s <= -eps) return 0.0;
  if (s > eps) return 1.0;
  return 0.5 * std::sin(std::numbers::pi * s / (2.0 * eps)) + 0.5;
}

double smooth_step_derivative(double s, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::kDomainError, "smooth_step needs eps > 0");
  if (s <= -eps || s > eps) return 0.0;
  return std::numbers::pi / (4.0 * eps) * std::cos(std::numbers::pi * s / (2.0 * eps));
}

Matrix jacobian_fd(const MixingMap& map, const Vector& s, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::kDomainError, "step h must be positive");
  check_in_domain(map, s);
  const int d = map.latent_dim();
  Matrix j(map.observed_dim(), d);
  for (int k = 0; k < d; ++k) {
    Vector plus = s;
    Vector minus = s;
    plus(k) += h;
    minus(k) -= h;
    j.col(k) = (map.eval(plus) - map.eval(minus)) / (2.0 * h);
  }
  return j;
}

namespace {

Box default_box(const MixingMap& map) {
  const int d = map.latent_dim();
  switch (map.domain()) {
    case Domain::kUnitCube:
      return {Vector::Zero(d), Vector::Ones(d)};
    case Domain::kOpenUnitCube:
      return {Vector::Constant(d, 1e-9), Vector::Constant(d, 1.0 - 1e-9)};
    case Domain::kWhole:
      break;
  }
  throw Error(ErrorKind::kDomainError, "unbounded domain: supply a bounding box");
}

Vector uniform_in_box(const Box& box, Rng& rng) {
  Vector s(box.lo.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = rng.uniform(box.lo(i), box.hi(i));
  return s;
}

bool inside(const Box& box, const Vector& s) {
  return (s.array() >= box.lo.array()).all() && (s.array() <= box.hi.array()).all();
}

}  // namespace

InjectivityReport injectivity_probe(const MixingMap& map, std::size_t n_pairs, std::uint64_t seed,
                                    std::optional<Box> box) {
  const Box b = box ? *box : default_box(map);
  if (b.lo.size() != map.latent_dim() || b.hi.size() != map.latent_dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "box dimension differs from latent dimension");
  }
  const double min_width = (b.hi - b.lo).minCoeff();
  Rng rng(seed);
  InjectivityReport report;
  report.min_ratio = std::numeric_limits<double>::infinity();

  for (std::size_t n = 0; n < n_pairs; ++n) {
    const Vector s = uniform_in_box(b, rng);
    Vector other;
    bool guided = false;
    if (n % 2 == 1) {
      try {
        const Matrix j = map.jacobian(s);
        Eigen::JacobiSVD<Matrix> svd(j, Eigen::ComputeThinV);
        const Vector v = svd.matrixV().col(j.cols() - 1);
        const double t = min_width * rng.uniform(1e-5, 0.05);
        other = s + t * v;
        if (!inside(b, other)) other = s - t * v;
        guided = inside(b, other);
      } catch (const Error&) {
        guided = false;
      }
    }
    if (!guided) {
      do {
        other = uniform_in_box(b, rng);
      } while ((other - s).norm() < 1e-6);
    }
    const double ds = (other - s).norm();
    if (ds < 1e-6) continue;
    const double dx = (map.eval(other) - map.eval(s)).norm();
    ++report.pairs;
    if (guided) ++report.guided_pairs;
    if (dx < 1e-9) ++report.violations;
    report.min_ratio = std::min(report.min_ratio, dx / ds);
  }
  return report;
}

}  // namespace ima
