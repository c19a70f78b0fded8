#pragma once

#include <Eigen/Dense>

namespace sdlq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Default number of RK4 step pairs per sampling interval (2M steps, 2M+1 nodes).
inline constexpr int kDefaultSubsteps = 64;

}  // namespace sdlq
