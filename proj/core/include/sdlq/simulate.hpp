#pragma once

#include <functional>
#include <vector>

#include "sdlq/grid.hpp"
#include "sdlq/problem.hpp"
#include "sdlq/riccati.hpp"
#include "sdlq/types.hpp"

namespace sdlq {

/// Control defined at every t in [a, b].
using ControlFunction = std::function<Vector(double)>;

/// u = sum_i U_i 1_[s_i, s_{i+1}).
struct PiecewiseConstantControl {
  SamplingGrid grid;
  std::vector<Vector> U;

  /// Value at t (right-continuous; t = b takes the last coefficient).
  Vector operator()(double t) const;
  ControlFunction as_function() const;
};

PiecewiseConstantControl make_control(const SamplingGrid& grid, std::vector<Vector> U);
PiecewiseConstantControl zero_control(const SamplingGrid& grid, Index m);
PiecewiseConstantControl control_of(const SampledSolution& sol);

/// State samples on the shared per-interval node grid (2M+1 nodes each).
/// The first node of interval i+1 carries the value of the last node of
/// interval i.
struct Trajectory {
  SamplingGrid grid;
  int substeps = 0;
  std::vector<std::vector<double>> times;
  std::vector<std::vector<Vector>> q;
  /// Right-hand side A q + B u + omega at each node, using interval i's control.
  std::vector<std::vector<Vector>> qdot;
  Vector q_end;
};

/// Costate on the same layout; p_end = -S (q(b) - q_b).
struct CostateTrajectory {
  SamplingGrid grid;
  int substeps = 0;
  std::vector<std::vector<double>> times;
  std::vector<std::vector<Vector>> p;
  Vector p_end;

  /// p(s_i) for i = 0..N.
  Vector at_sample(Index i) const;
};

/// How the costate integrator reconstructs q between stored nodes.
enum class StateInterpolation { Linear, Hermite };

Trajectory simulate_state(const LQProblem& p, const PiecewiseConstantControl& u, int substeps = kDefaultSubsteps);
Trajectory simulate_state(const LQProblem& p, const SamplingGrid& grid, const ControlFunction& u,
                          int substeps = kDefaultSubsteps);

/// Simpson running cost plus terminal term.
double evaluate_cost(const LQProblem& p, const PiecewiseConstantControl& u, const Trajectory& traj);
double evaluate_cost(const LQProblem& p, const ControlFunction& u, const Trajectory& traj);

/// Running cost restricted to each interval (no terminal term).
std::vector<double> interval_running_costs(const LQProblem& p, const PiecewiseConstantControl& u,
                                           const Trajectory& traj);

/// 1/2 <S (q(b) - q_b), q(b) - q_b>.
double terminal_cost(const LQProblem& p, const Vector& q_end);

/// Simulate-and-evaluate shortcut.
double control_cost(const LQProblem& p, const PiecewiseConstantControl& u, int substeps = kDefaultSubsteps);
double control_cost(const LQProblem& p, const SamplingGrid& grid, const ControlFunction& u,
                    int substeps = kDefaultSubsteps);

CostateTrajectory simulate_costate(const LQProblem& p, const Trajectory& traj, int substeps = kDefaultSubsteps,
                                   StateInterpolation interp = StateInterpolation::Hermite);

/// r_i = U_i - Rbar_i^{-1} (RV_i + int_{s_i}^{s_{i+1}} B^T p ds).
std::vector<Vector> pmp_residual_sampled(const LQProblem& p, const SampledSolution& sol,
                                         const CostateTrajectory& costate);

/// max over nodes of |u(t) - v(t) - R(t)^{-1} B(t)^T p(t)| for a dense control,
/// simulated on a single interval with 2M RK4 steps.
double pmp_residual_permanent(const LQProblem& p, const ControlFunction& u, int substeps = kDefaultSubsteps);

/// U_i = (1/h_i) int u over interval i, by Simpson with 2M panels.
PiecewiseConstantControl averaged_control(const ControlFunction& u, const SamplingGrid& grid,
                                          int substeps = kDefaultSubsteps);

/// Exact interval means of a piecewise-constant control on a different grid.
PiecewiseConstantControl averaged_control(const PiecewiseConstantControl& fine, const SamplingGrid& grid);

}  // namespace sdlq
