#pragma once

#include <Eigen/Dense>

namespace horolift {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

} // namespace horolift
