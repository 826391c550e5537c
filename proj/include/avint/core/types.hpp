#pragma once

#include <Eigen/Dense>

namespace avint {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace avint
