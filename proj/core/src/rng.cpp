#include "ima/rng.hpp"

namespace ima {

Matrix random_orthonormal_columns(Eigen::Index m, Eigen::Index d, Rng& rng) {
  Matrix g(m, d);
  for (Eigen::Index j = 0; j < d; ++j) g.col(j) = rng.normal_vector(m);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(m, d);
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Matrix random_orthogonal(Eigen::Index n, Rng& rng) {
  return random_orthonormal_columns(n, n, rng);
}

}  // namespace ima
