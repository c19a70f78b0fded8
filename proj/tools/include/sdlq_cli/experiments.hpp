#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdlq/problem.hpp"
#include "sdlq/riccati.hpp"
#include "sdlq/simulate.hpp"

namespace sdlq::cli {

/// Permanent (or fine-grid) control that sampled solutions are compared to.
struct Reference {
  std::string label;
  ControlFunction u;
  double cost = 0.0;
  /// Set for `fine:N` references; enables exact interval averaging.
  std::optional<PiecewiseConstantControl> fine;
};

/// Dense single-interval cost evaluation of a closed-form control.
Reference closed_form_reference(const LQProblem& p, ControlFunction u, int substeps);

/// Optimal sampled control on a uniform grid of `intervals`.
Reference fine_grid_reference(const LQProblem& p, Index intervals, int substeps);

/// Interval means of the reference on `grid`.
PiecewiseConstantControl averaged_reference(const Reference& ref, const SamplingGrid& grid, int substeps);

struct ConvergenceRow {
  Index N = 0;
  double norm_delta = 0.0;
  /// max_i |U*_{h,i} - u_ref(s_i)|
  double max_node_err = 0.0;
  /// C(u*_h), simulated
  double cost_sampled = 0.0;
  /// C(u*_h) - C(u_ref)
  double cost_gap = 0.0;
  /// C(u_h) for the averaged reference
  double cost_averaged = 0.0;
};

struct ConvergenceRun {
  ConvergenceRow row;
  SampledSolution solution;
  PiecewiseConstantControl averaged;
};

ConvergenceRun convergence_run(const LQProblem& p, Index intervals, const Reference& ref, int substeps);

struct AveragedComparison {
  SampledSolution optimal;
  PiecewiseConstantControl averaged;
  std::vector<double> diffs;
  double max_diff = 0.0;
  double cost_sampled = 0.0;
  double cost_averaged = 0.0;
};

AveragedComparison compare_averaged(const LQProblem& p, const SamplingGrid& grid, const Reference& ref,
                                    int substeps);

}  // namespace sdlq::cli
