#pragma once

#include <Eigen/Dense>

namespace ima {

// m x d real matrices carry Jacobians, mixing matrices and Gram factors.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace ima
