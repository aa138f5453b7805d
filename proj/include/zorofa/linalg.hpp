#pragma once

#include <Eigen/Dense>

namespace zorofa {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace zorofa
