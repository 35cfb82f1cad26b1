#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "ima/types.hpp"

namespace ima::oracle {

using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

/// Direct evaluation of sum log ||J_i|| - 1/2 log det(J^T J) in long double,
/// using an LDLT of the Gram matrix instead of singular values.
inline long double contrast_oracle(const Matrix& j) {
  const MatrixL jl = j.cast<long double>();
  const MatrixL gram = jl.transpose() * jl;
  long double sum_log_norms = 0.0L;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) sum_log_norms += 0.5L * std::log(gram(i, i));
  const Eigen::LDLT<MatrixL> ldlt(gram);
  long double log_det = 0.0L;
  for (Eigen::Index i = 0; i < gram.rows(); ++i) log_det += std::log(ldlt.vectorD()(i));
  return sum_log_norms - 0.5L * log_det;
}

/// Standard normal CDF via erfc, independent of the library's Boost path.
inline double phi_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double phi_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.14159265358979323846); }

}  // namespace ima::oracle
