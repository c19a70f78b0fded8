#pragma once

#include <vector>

#include "sdlq/grid.hpp"
#include "sdlq/problem.hpp"
#include "sdlq/types.hpp"

namespace sdlq {

/// Largest stacked control dimension m*N the oracle accepts.
inline constexpr Index kOracleGuard = 400;

/// C(U) = 1/2 <Hq U, U> + <g, U> + c over the stacked coefficients
/// U = (U_0, ..., U_{N-1}).
struct DenseQP {
  Matrix Hq;
  Vector g;
  double c = 0.0;

  double value(const Vector& U) const { return 0.5 * U.dot(Hq * U) + g.dot(U) + c; }
};

/// Rebuilds the quadratic from simulated cost evaluations only:
///   c = C(0), g_j = (C(e_j) - C(-e_j)) / 2,
///   Hq_jj = C(e_j) + C(-e_j) - 2 C(0),
///   Hq_jk = C(e_j + e_k) - C(e_j) - C(e_k) + C(0).
/// Shares nothing with the sweep except the state simulator.
DenseQP assemble_qp(const LQProblem& p, const SamplingGrid& grid, int substeps = kDefaultSubsteps);

/// U = -Hq^{-1} g by LLT.
Vector solve_qp(const DenseQP& qp);

struct OracleReport {
  Index n = 0;
  Index m = 0;
  Index intervals = 0;
  /// Per interval: max_k |U*_{i,k} - Uqp_{i,k}|.
  std::vector<double> abs_diffs;
  double max_abs_diff = 0.0;
  /// max_abs_diff / max(|Uqp|_inf, 1e-9).
  double max_rel_diff = 0.0;
  double sweep_cost = 0.0;
  double qp_cost = 0.0;
  double cost_diff = 0.0;
  /// |Hq U + g| at the QP solution.
  double certificate_norm = 0.0;
  double g_norm = 0.0;
  std::vector<Vector> sweep_U;
  std::vector<Vector> qp_U;

  bool agrees(double tol = 1e-6) const { return max_rel_diff <= tol; }
};

OracleReport cross_check(const LQProblem& p, const SamplingGrid& grid, int substeps = kDefaultSubsteps);

}  // namespace sdlq
