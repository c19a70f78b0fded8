#include "sdlq/export.hpp"

#include <cstdio>
#include <sstream>

namespace sdlq {

using nlohmann::json;

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) {
    out.push_back(v(k));
  }
  return out;
}

json solution_to_json(const SampledSolution& sol, const RiccatiSweep& sweep, const std::vector<Vector>* residuals) {
  json out;
  out["grid"] = {{"s", sol.grid.times()}, {"h", sol.grid.durations()}, {"norm_delta", sol.grid.norm_delta()}};
  json U = json::array();
  for (const auto& u : sol.U) {
    U.push_back(to_json(u));
  }
  out["U"] = std::move(U);
  json q = json::array();
  for (const auto& node : sol.q_nodes) {
    q.push_back(to_json(node));
  }
  out["q_nodes"] = std::move(q);
  out["predicted_cost"] = sol.predicted_cost;
  out["simulated_cost"] = sol.simulated_cost ? json(*sol.simulated_cost) : json(nullptr);
  json steps = json::array();
  for (const auto& st : sweep.steps) {
    steps.push_back({{"i", st.i}, {"gain", to_json(st.gain)}, {"offset", to_json(st.offset)}});
  }
  out["steps"] = std::move(steps);
  if (residuals != nullptr) {
    json r = json::array();
    double worst = 0.0;
    for (const auto& res : *residuals) {
      r.push_back(to_json(res));
      worst = std::max(worst, res.norm());
    }
    out["pmp_residuals"] = std::move(r);
    out["max_pmp_residual"] = worst;
  }
  return out;
}

json blocks_to_json(const IntervalBlocks& blk) {
  return json{{"i", blk.interval},
              {"Zstep", to_json(blk.Zstep)},
              {"ZB", to_json(blk.ZB)},
              {"ZOmega", to_json(blk.ZOmega)},
              {"ZWZ", to_json(blk.ZWZ)},
              {"ZBWZ", to_json(blk.ZBWZ)},
              {"ZBWZB", to_json(blk.ZBWZB)},
              {"ZBWZOmegaX", to_json(blk.ZBWZOmegaX)},
              {"ZWZOmegaX", to_json(blk.ZWZOmegaX)},
              {"WZOmegaX2", blk.WZOmegaX2},
              {"Rbar", to_json(blk.Rbar)},
              {"RV", to_json(blk.RV)},
              {"RV2", blk.RV2}};
}

json oracle_report_to_json(const OracleReport& report) {
  json per_index = json::array();
  for (std::size_t i = 0; i < report.abs_diffs.size(); ++i) {
    per_index.push_back({{"i", i},
                         {"sweep_U", to_json(report.sweep_U[i])},
                         {"qp_U", to_json(report.qp_U[i])},
                         {"abs_diff", report.abs_diffs[i]}});
  }
  return json{{"n", report.n},
              {"m", report.m},
              {"N", report.intervals},
              {"per_index", std::move(per_index)},
              {"max_abs_diff", report.max_abs_diff},
              {"max_rel_diff", report.max_rel_diff},
              {"sweep_cost", report.sweep_cost},
              {"qp_cost", report.qp_cost},
              {"cost_diff", report.cost_diff},
              {"certificate_norm", report.certificate_norm},
              {"agrees", report.agrees()}};
}

std::string csv_row(const std::vector<double>& values) {
  std::string row;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) {
      row += ',';
    }
    row += format_number(values[k]);
  }
  return row;
}

std::string control_csv(const PiecewiseConstantControl& u) {
  std::ostringstream os;
  os << "i,s_i,h_i";
  const Index m = u.U.empty() ? 0 : u.U.front().size();
  for (Index k = 1; k <= m; ++k) {
    os << ",U_" << k;
  }
  os << '\n';
  for (Index i = 0; i < u.grid.intervals(); ++i) {
    std::vector<double> row{u.grid.s(i), u.grid.h(i)};
    const auto& value = u.U[static_cast<std::size_t>(i)];
    row.insert(row.end(), value.data(), value.data() + value.size());
    os << i << ',' << csv_row(row) << '\n';
  }
  return os.str();
}

std::string trajectory_csv(const Trajectory& traj, const CostateTrajectory* costate) {
  std::ostringstream os;
  const Index n = traj.q_end.size();
  os << 't';
  for (Index k = 1; k <= n; ++k) {
    os << ",q_" << k;
  }
  if (costate != nullptr) {
    for (Index k = 1; k <= n; ++k) {
      os << ",p_" << k;
    }
  }
  os << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const std::size_t first = i == 0 ? 0 : 1;
    for (std::size_t k = first; k < traj.times[i].size(); ++k) {
      std::vector<double> row{traj.times[i][k]};
      const auto& q = traj.q[i][k];
      row.insert(row.end(), q.data(), q.data() + q.size());
      if (costate != nullptr) {
        const auto& p = costate->p[i][k];
        row.insert(row.end(), p.data(), p.data() + p.size());
      }
      os << csv_row(row) << '\n';
    }
  }
  return os.str();
}

}  // namespace sdlq
