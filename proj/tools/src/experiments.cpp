#include "sdlq_cli/experiments.hpp"

#include <algorithm>

namespace sdlq::cli {
namespace {

constexpr int kReferenceSubsteps = 512;

}  // namespace

Reference closed_form_reference(const LQProblem& p, ControlFunction u, int substeps) {
  const int dense = std::max(substeps, kReferenceSubsteps);
  const double cost = control_cost(p, SamplingGrid::uniform(1, p.a, p.b), u, dense);
  return Reference{"closed-form", std::move(u), cost, std::nullopt};
}

Reference fine_grid_reference(const LQProblem& p, Index intervals, int substeps) {
  const auto grid = SamplingGrid::uniform(intervals, p.a, p.b);
  const auto solved = solve_sampled(p, grid, substeps);
  auto control = control_of(solved.solution);
  const double cost = control_cost(p, control, substeps);
  return Reference{"fine:" + std::to_string(intervals), control.as_function(), cost, std::move(control)};
}

PiecewiseConstantControl averaged_reference(const Reference& ref, const SamplingGrid& grid, int substeps) {
  if (ref.fine) {
    return averaged_control(*ref.fine, grid);
  }
  return averaged_control(ref.u, grid, substeps);
}

ConvergenceRun convergence_run(const LQProblem& p, Index intervals, const Reference& ref, int substeps) {
  const auto grid = SamplingGrid::uniform(intervals, p.a, p.b);
  auto solved = solve_sampled(p, grid, substeps);
  auto& sol = solved.solution;
  const auto control = control_of(sol);
  sol.simulated_cost = control_cost(p, control, substeps);

  ConvergenceRow row;
  row.N = intervals;
  row.norm_delta = grid.norm_delta();
  for (Index i = 0; i < intervals; ++i) {
    row.max_node_err = std::max(row.max_node_err, (sol.U[static_cast<std::size_t>(i)] - ref.u(grid.s(i))).norm());
  }
  row.cost_sampled = *sol.simulated_cost;
  row.cost_gap = row.cost_sampled - ref.cost;
  auto averaged = averaged_reference(ref, grid, substeps);
  row.cost_averaged = control_cost(p, averaged, substeps);
  return ConvergenceRun{row, std::move(sol), std::move(averaged)};
}

AveragedComparison compare_averaged(const LQProblem& p, const SamplingGrid& grid, const Reference& ref,
                                    int substeps) {
  auto solved = solve_sampled(p, grid, substeps);
  AveragedComparison out{std::move(solved.solution), averaged_reference(ref, grid, substeps), {}, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < out.optimal.U.size(); ++i) {
    const double diff = (out.optimal.U[i] - out.averaged.U[i]).cwiseAbs().maxCoeff();
    out.diffs.push_back(diff);
    out.max_diff = std::max(out.max_diff, diff);
  }
  out.cost_sampled = control_cost(p, control_of(out.optimal), substeps);
  out.optimal.simulated_cost = out.cost_sampled;
  out.cost_averaged = control_cost(p, out.averaged, substeps);
  return out;
}

}  // namespace sdlq::cli
