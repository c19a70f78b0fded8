#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sdlq/blocks.hpp"
#include "sdlq/grid.hpp"
#include "sdlq/types.hpp"

namespace sdlq {

/// One index of the backward recursion. K, J, Y are the cost-to-go data at
/// s_i; gain and offset give U_i = gain * q(s_i) + offset.
struct SweepStep {
  Index i = 0;
  double F = 0.0;
  Vector G;
  Vector H;
  Matrix P;
  Matrix Q;
  Matrix T;
  Eigen::LLT<Matrix> T_factor;
  Matrix K;
  Vector J;
  double Y = 0.0;
  Matrix gain;
  Vector offset;
  /// Eigenvalue ratio of T (diagnostic only).
  double T_condition = 0.0;
};

struct RiccatiSweep {
  std::vector<SweepStep> steps;
  Matrix K_terminal;
  Vector J_terminal;
  double Y_terminal = 0.0;

  Index intervals() const noexcept { return static_cast<Index>(steps.size()); }
  const Matrix& K(Index j) const;
  const Vector& J(Index j) const;
  double Y(Index j) const;
};

/// Optimal piecewise-constant coefficients and sampled states.
struct SampledSolution {
  SamplingGrid grid;
  std::vector<Vector> U;
  /// q(s_0), ..., q(s_N); the last entry is the true state q(b).
  std::vector<Vector> q_nodes;
  double predicted_cost = 0.0;
  std::optional<double> simulated_cost;
};

/// Backward recursion from K_N = S, J_N = 0, Y_N = 0. T_i is only ever
/// factorized (LLT); K_i is symmetrized after each update.
RiccatiSweep backward_sweep(const std::vector<IntervalBlocks>& blocks, const Matrix& S);

/// Forward induction q_0 = q_a, U_i = -T_i^{-1}(P_i q_i + H_i),
/// q_{i+1} = Zstep_i q_i + ZB_i U_i + ZOmega_i (q_b restored on the last node).
SampledSolution forward_synthesis(const RiccatiSweep& sweep, const std::vector<IntervalBlocks>& blocks,
                                  const SamplingGrid& grid, const Vector& q_a);

/// 1/2 <K_j y, y> + <J_j, y> + 1/2 Y_j for 0 <= j <= N. At j = N the
/// argument is the terminal deviation q(b) - q_b.
double value_function(const RiccatiSweep& sweep, Index j, const Vector& y);

/// (gain_i, offset_i) for online use with a measured q(s_i).
std::pair<Matrix, Vector> closed_loop_gain(const RiccatiSweep& sweep, Index i);

/// blocks -> sweep -> synthesis for a validated problem.
struct SolveResult {
  std::vector<IntervalBlocks> blocks;
  RiccatiSweep sweep;
  SampledSolution solution;
};

SolveResult solve_sampled(const LQProblem& p, const SamplingGrid& grid, int substeps = kDefaultSubsteps);

}  // namespace sdlq
