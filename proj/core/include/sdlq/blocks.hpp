#pragma once

#include <vector>

#include "sdlq/grid.hpp"
#include "sdlq/problem.hpp"
#include "sdlq/transition.hpp"

namespace sdlq {

/// Integral data of one sampling interval [s_i, s_{i+1}] consumed by the
/// backward sweep. With Gamma(tau) = int_{s_i}^tau Z(tau,s) B(s) ds,
/// xi(tau) = int_{s_i}^tau Z(tau,s) omega(s) ds and D(tau) = xi(tau) - x(tau):
///
///   Zstep       Z(s_{i+1}, s_i)
///   ZB          Gamma(s_{i+1})
///   ZOmega      xi(s_{i+1}), minus q_b on the last interval
///   ZWZ         int Z^T W Z          ZBWZ        int Gamma^T W Z
///   ZBWZB       int Gamma^T W Gamma  ZBWZOmegaX  int Gamma^T W D
///   ZWZOmegaX   int Z^T W D          WZOmegaX2   int D^T W D
///   Rbar        int R                RV          int R v
///   RV2         int v^T R v
struct IntervalBlocks {
  Index interval = 0;
  Matrix Zstep;
  Matrix ZB;
  Vector ZOmega;
  Matrix ZWZ;
  Matrix ZBWZ;
  Matrix ZBWZB;
  Vector ZBWZOmegaX;
  Vector ZWZOmegaX;
  double WZOmegaX2 = 0.0;
  Matrix Rbar;
  Vector RV;
  double RV2 = 0.0;
  /// q_b on the last interval (the amount subtracted inside ZOmega), zero elsewhere.
  Vector terminal_shift;
};

IntervalBlocks compute_blocks(const LQProblem& p, const SamplingGrid& grid, Index i,
                              const IntervalPropagation& prop);

/// Blocks for every interval, ordered by index. Does not read q_a.
std::vector<IntervalBlocks> compute_all_blocks(const LQProblem& p, const SamplingGrid& grid,
                                               int substeps = kDefaultSubsteps);

}  // namespace sdlq
