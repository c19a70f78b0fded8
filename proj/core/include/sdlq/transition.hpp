#pragma once

#include <vector>

#include "sdlq/grid.hpp"
#include "sdlq/problem.hpp"
#include "sdlq/types.hpp"

namespace sdlq {

/// Dense RK4 output over one sampling interval [s_i, s_{i+1}].
///
/// At every node tau_k:
///   Z[k]     = Z(tau_k, s_i)
///   Gamma[k] = int_{s_i}^{tau_k} Z(tau_k, s) B(s) ds
///   xi[k]    = int_{s_i}^{tau_k} Z(tau_k, s) omega(s) ds
/// The inner convolutions obey Gamma' = A Gamma + B and xi' = A xi + omega,
/// so all three are advanced together as one augmented linear system.
struct IntervalPropagation {
  Index interval = 0;
  int substeps = 0;
  std::vector<double> nodes;
  std::vector<Matrix> Z;
  std::vector<Matrix> Gamma;
  std::vector<Vector> xi;
};

IntervalPropagation propagate_interval(const LQProblem& p, const SamplingGrid& grid, Index i,
                                       int substeps = kDefaultSubsteps);

/// Z(t, s), integrated with 2M RK4 steps forward or backward. Z(s, s) = I exactly.
Matrix transition_matrix(const LQProblem& p, double t, double s, int substeps = kDefaultSubsteps);

}  // namespace sdlq
