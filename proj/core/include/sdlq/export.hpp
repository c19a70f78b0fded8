#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sdlq/blocks.hpp"
#include "sdlq/oracle.hpp"
#include "sdlq/riccati.hpp"
#include "sdlq/simulate.hpp"

namespace sdlq {

/// Locale-independent "%.17g".
std::string format_number(double value);

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const Vector& v);

/// grid, U, q_nodes, predicted/simulated cost, per-step gain/offset and,
/// when given, the sampled PMP residuals.
nlohmann::json solution_to_json(const SampledSolution& sol, const RiccatiSweep& sweep,
                                const std::vector<Vector>* residuals = nullptr);

nlohmann::json blocks_to_json(const IntervalBlocks& blk);

nlohmann::json oracle_report_to_json(const OracleReport& report);

/// Header `i,s_i,h_i,U_1..U_m`.
std::string control_csv(const PiecewiseConstantControl& u);

/// Header `t,q_1..q_n` (and `p_1..p_n` with a costate). Interval joins are
/// written once.
std::string trajectory_csv(const Trajectory& traj, const CostateTrajectory* costate = nullptr);

/// Joins values with `,` using format_number.
std::string csv_row(const std::vector<double>& values);

}  // namespace sdlq
