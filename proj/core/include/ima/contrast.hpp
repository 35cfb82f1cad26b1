#pragma once

#include "ima/types.hpp"

namespace ima {

inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kContrastClampSlack = 1e-12;

/// Local contrast together with a flag recording whether a small negative
/// round-off value was clamped to zero.
struct LocalContrast {
  double value = 0.0;
  bool clamped = false;
};

/// Column-orthogonality contrast of a Jacobian, in nats:
///   sum_i log ||J[:, i]|| - 1/2 log det(J^T J).
///
/// The Gram log-determinant comes from the singular values of J (via a thin
/// QR followed by an SVD of the small triangular factor). Requires
/// rows >= cols and sigma_min > rank_tol * sigma_max; throws
/// Error{kRankDeficient} otherwise and Error{kNonFinite} on non-finite input.
LocalContrast local_ima_contrast_detail(const Eigen::Ref<const Matrix>& jacobian,
                                        double rank_tol = kDefaultRankTol);

/// Convenience wrapper returning only the clamped value.
double local_ima_contrast(const Eigen::Ref<const Matrix>& jacobian,
                          double rank_tol = kDefaultRankTol);

/// Upper bound on the contrast of any d-column matrix whose normalized Gram
/// off-diagonals are bounded by eps in magnitude. Requires (d-1)*eps < 1.
double hadamard_gap_upper_bound(int d, double eps);

/// 1 - min{1, exp(2 log d - kappa (m-1) delta^2 / d^2)}.
double theoretical_success_bound(int m, int d, double delta, double kappa = 1.0);

/// Largest absolute cosine between two distinct columns; 0 for one column.
double offdiag_coherence(const Eigen::Ref<const Matrix>& jacobian);

/// Singular values of a (possibly tall) matrix, descending.
Vector singular_values(const Eigen::Ref<const Matrix>& a);

/// True when sigma_min > rank_tol * sigma_max and the matrix is not all zero.
bool has_full_column_rank(const Eigen::Ref<const Matrix>& a, double rank_tol = kDefaultRankTol);

}  // namespace ima
