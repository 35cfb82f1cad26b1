#include "ima/two_piece.hpp"

#include <cmath>

#include "ima/contrast.hpp"
#include "ima/errors.hpp"

namespace ima {

TwoPieceMap make_two_piece(const Matrix& j0, int k, const Vector& new_col, double c, double eps) {
  const Eigen::Index m = j0.rows();
  const Eigen::Index d = j0.cols();
  if (d < 1 || m < d) throw Error(ErrorKind::kDimensionMismatch, "J0 needs m >= d >= 1");
  if (k < 0 || k >= d) throw Error(ErrorKind::kDomainError, "column index out of range");
  if (new_col.size() != m) throw Error(ErrorKind::kDimensionMismatch, "new column has wrong size");
  if (!std::isfinite(c) || !(eps >= 0.0)) {
    throw Error(ErrorKind::kDomainError, "need finite threshold and eps >= 0");
  }
  if (!j0.allFinite() || !new_col.allFinite()) {
    throw Error(ErrorKind::kNonFinite, "two-piece inputs are not finite");
  }

  TwoPieceMap map;
  map.j0_ = j0;
  map.j1_ = j0;
  map.j1_.col(k) = new_col;
  map.k_ = k;
  map.c_ = c;
  map.eps_ = eps;
  map.linear_ = (new_col - j0.col(k)).norm() == 0.0;

  if (!has_full_column_rank(j0)) throw Error(ErrorKind::kRankDeficient, "J0 is rank deficient");
  if (!map.linear_) {
    Matrix joint(m, d + 1);
    joint << j0, new_col;
    if (m <= d || !has_full_column_rank(joint)) {
      throw Error(ErrorKind::kRankDeficient, "new column is not independent of J0");
    }
  }
  map.c1_ = c * (j0.col(k) - new_col);

  // Both pieces must agree on {s_k = c}.
  Vector on_boundary = Vector::Zero(d);
  on_boundary(k) = c;
  const Vector left = map.j0_ * on_boundary;
  const Vector right = map.j1_ * on_boundary + map.c1_;
  if ((left - right).norm() > 1e-12 * std::max(1.0, left.norm())) {
    throw Error(ErrorKind::kNonFinite, "two-piece continuity check failed");
  }
  return map;
}

Vector TwoPieceMap::eval(const Vector& s, EvalStats*) const {
  check_in_domain(*this, s);
  const double sk = s(k_);
  if (eps_ == 0.0) return sk <= c_ ? Vector(j0_ * s) : Vector(j1_ * s + c1_);
  const double w0 = smooth_step(c_ - sk, eps_);
  const double w1 = smooth_step(sk - c_, eps_);
  Vector out = Vector::Zero(j0_.rows());
  if (w0 != 0.0) out += w0 * (j0_ * s);
  if (w1 != 0.0) out += w1 * (j1_ * s + c1_);
  return out;
}

Matrix TwoPieceMap::jacobian(const Vector& s, EvalStats*) const {
  check_in_domain(*this, s);
  const double sk = s(k_);
  if (eps_ == 0.0) {
    if (!linear_ && std::abs(sk - c_) < 1e-12 * std::max(1.0, std::abs(c_))) {
      throw Error(ErrorKind::kOnKnot, "two-piece map has no Jacobian on its boundary");
    }
    return sk <= c_ ? j0_ : j1_;
  }
  const double w0 = smooth_step(c_ - sk, eps_);
  const double w1 = smooth_step(sk - c_, eps_);
  Matrix j = w0 * j0_ + w1 * j1_;
  const double dw0 = -smooth_step_derivative(c_ - sk, eps_);
  const double dw1 = smooth_step_derivative(sk - c_, eps_);
  if (dw0 != 0.0 || dw1 != 0.0) {
    j.col(k_) += dw0 * (j0_ * s) + dw1 * (j1_ * s + c1_);
  }
  return j;
}

TwoPieceMap sample_two_piece(int d, int m, int k, double c, double eps,
                             const SphericalSampler& sampler, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix j0 = sample_isotropic_matrix(m, d, sampler, rng);
  const Vector col = sampler.sample(rng);
  return make_two_piece(j0, k, col, c, eps);
}

}  // namespace ima
