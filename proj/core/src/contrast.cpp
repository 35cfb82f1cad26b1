#include "ima/contrast.hpp"

#include <cmath>
#include <string>

#include "ima/errors.hpp"

namespace ima {

namespace {

void require_finite(const Eigen::Ref<const Matrix>& a) {
  if (!a.allFinite()) throw Error(ErrorKind::kNonFinite, "matrix has non-finite entries");
}

}  // namespace

Vector singular_values(const Eigen::Ref<const Matrix>& a) {
  if (a.rows() > 2 * a.cols()) {
    // Thin QR first: the singular values of R equal those of A and the SVD
    // then runs on a d x d problem.
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
    return Eigen::JacobiSVD<Matrix>(r).singularValues();
  }
  return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

bool has_full_column_rank(const Eigen::Ref<const Matrix>& a, double rank_tol) {
  if (a.cols() == 0 || a.rows() < a.cols()) return false;
  const Vector sv = singular_values(a);
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  return smax > 0.0 && smin > rank_tol * smax;
}

LocalContrast local_ima_contrast_detail(const Eigen::Ref<const Matrix>& jacobian,
                                        double rank_tol) {
  require_finite(jacobian);
  const Eigen::Index m = jacobian.rows();
  const Eigen::Index d = jacobian.cols();
  if (d == 0 || m < d) {
    throw Error(ErrorKind::kRankDeficient,
                "need rows >= cols > 0, got " + std::to_string(m) + "x" + std::to_string(d));
  }

  const Vector sv = singular_values(jacobian);
  const double smax = sv(0);
  const double smin = sv(d - 1);
  if (!(smax > 0.0) || !(smin > rank_tol * smax)) {
    throw Error(ErrorKind::kRankDeficient, "smallest singular value below rank tolerance");
  }

  // Column scaling does not change the contrast; normalizing first keeps the
  // two log terms at unit scale so they cancel without losing digits.
  Matrix normalized = jacobian;
  for (Eigen::Index i = 0; i < d; ++i) normalized.col(i) /= jacobian.col(i).norm();
  const Vector nsv = singular_values(normalized);

  double value = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) value -= std::log(nsv(i));

  LocalContrast out;
  if (value < 0.0) {
    if (value < -kContrastClampSlack) {
      throw Error(ErrorKind::kNonFinite,
                  "contrast evaluated to " + std::to_string(value) + " below clamp slack");
    }
    out.clamped = true;
    value = 0.0;
  }
  out.value = value;
  return out;
}

double local_ima_contrast(const Eigen::Ref<const Matrix>& jacobian, double rank_tol) {
  return local_ima_contrast_detail(jacobian, rank_tol).value;
}

double hadamard_gap_upper_bound(int d, double eps) {
  if (d < 1) throw Error(ErrorKind::kDomainError, "d must be positive");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorKind::kDomainError, "eps must be a finite non-negative number");
  }
  const double spread = static_cast<double>(d - 1) * eps;
  if (spread >= 1.0) throw Error(ErrorKind::kDomainError, "(d-1)*eps must be < 1");
  return 0.5 * (-std::log1p(-spread) - static_cast<double>(d - 1) * std::log1p(eps));
}

double theoretical_success_bound(int m, int d, double delta, double kappa) {
  if (m < 2 || d < 1 || !(delta > 0.0) || !(kappa > 0.0)) {
    throw Error(ErrorKind::kDomainError, "need m >= 2, d >= 1, delta > 0, kappa > 0");
  }
  const double dd = static_cast<double>(d);
  const double exponent =
      2.0 * std::log(dd) - kappa * static_cast<double>(m - 1) * delta * delta / (dd * dd);
  if (exponent >= 0.0) return 0.0;
  return -std::expm1(exponent);
}

double offdiag_coherence(const Eigen::Ref<const Matrix>& jacobian) {
  require_finite(jacobian);
  const Eigen::Index d = jacobian.cols();
  Vector norms(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    norms(i) = jacobian.col(i).norm();
    if (norms(i) < 1e-300) {
      throw Error(ErrorKind::kZeroColumn, "column " + std::to_string(i) + " is zero");
    }
  }
  double worst = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double c = std::abs(jacobian.col(i).dot(jacobian.col(j))) / (norms(i) * norms(j));
      worst = std::max(worst, c);
    }
  }
  return worst;
}

}  // namespace ima
