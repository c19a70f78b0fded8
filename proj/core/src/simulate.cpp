#include "sdlq/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdlq/detail/rk4.hpp"
#include "sdlq/errors.hpp"

namespace sdlq {
namespace {

void check_substeps(int substeps) {
  if (substeps < 1) {
    throw Error(ErrorCode::InvalidInput, "substeps must be at least 1");
  }
}

void check_control(const LQProblem& p, const PiecewiseConstantControl& u) {
  if (static_cast<Index>(u.U.size()) != u.grid.intervals()) {
    throw Error(ErrorCode::DimensionMismatch, "control has " + std::to_string(u.U.size()) +
                                                  " coefficients for " + std::to_string(u.grid.intervals()) +
                                                  " intervals");
  }
  for (const auto& value : u.U) {
    if (value.size() != p.m) {
      throw Error(ErrorCode::DimensionMismatch, "control coefficient has the wrong length");
    }
    if (!value.allFinite()) {
      throw Error(ErrorCode::NonFinite, "control coefficient is not finite");
    }
  }
}

void check_same_grid(const SamplingGrid& lhs, const SamplingGrid& rhs) {
  if (lhs.times() != rhs.times()) {
    throw Error(ErrorCode::NodeMismatch, "control and trajectory use different grids");
  }
}

// `control(i, t)` gives the control value used on interval i at time t.
template <class ControlAt>
Trajectory simulate_impl(const LQProblem& p, const SamplingGrid& grid, ControlAt&& control, int substeps) {
  check_substeps(substeps);
  if (grid.a() != p.a || grid.b() != p.b) {
    throw Error(ErrorCode::InvalidInterval, "grid does not span the problem horizon");
  }
  const Index N = grid.intervals();
  Trajectory traj{grid, substeps, {}, {}, {}, {}};
  traj.times.resize(static_cast<std::size_t>(N));
  traj.q.resize(static_cast<std::size_t>(N));
  traj.qdot.resize(static_cast<std::size_t>(N));

  Matrix X = p.q_a;
  Matrix a_t, b_t, w_t;
  detail::Rk4Workspace ws;
  for (Index i = 0; i < N; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    auto forcing = [&](int, double t, Matrix& f) {
      p.B.evaluate_into(t, b_t);
      p.omega.evaluate_into(t, w_t);
      f.noalias() = b_t * control(i, t);
      f += w_t;
    };
    auto rhs = [&](double t) {
      Matrix f;
      forcing(0, t, f);
      p.A.evaluate_into(t, a_t);
      f.noalias() += a_t * X;
      return Vector(f.col(0));
    };
    traj.times[idx] = detail::interval_nodes(grid, i, substeps);
    const auto& nodes = traj.times[idx];
    traj.q[idx].reserve(nodes.size());
    traj.qdot[idx].reserve(nodes.size());
    traj.q[idx].emplace_back(X.col(0));
    traj.qdot[idx].push_back(rhs(nodes.front()));
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      detail::rk4_linear_step(detail::generator_of(p.A), forcing, nodes[k], nodes[k + 1] - nodes[k], X, ws);
      traj.q[idx].emplace_back(X.col(0));
      traj.qdot[idx].push_back(rhs(nodes[k + 1]));
    }
    if (!X.allFinite()) {
      throw Error(ErrorCode::NonFinite, "state diverged on interval " + std::to_string(i));
    }
  }
  traj.q_end = X.col(0);
  return traj;
}

// Simpson integral of 1/2 [<W(q-x), q-x> + <R(u-v), u-v>] on interval i.
template <class ControlAt>
double running_cost_on(const LQProblem& p, const Trajectory& traj, Index i, ControlAt&& control) {
  const auto idx = static_cast<std::size_t>(i);
  const auto& nodes = traj.times[idx];
  const auto weights = detail::simpson_weights(traj.grid.h(i), traj.substeps);
  Matrix w_t, r_t, x_t, v_t;
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double t = nodes[k];
    p.W.evaluate_into(t, w_t);
    p.R.evaluate_into(t, r_t);
    p.x_ref.evaluate_into(t, x_t);
    p.v_ref.evaluate_into(t, v_t);
    const Vector dq = traj.q[idx][k] - x_t.col(0);
    const Vector du = control(i, t) - v_t.col(0);
    sum += weights[k] * (dq.dot(w_t * dq) + du.dot(r_t * du));
  }
  return 0.5 * sum;
}

template <class ControlAt>
double cost_impl(const LQProblem& p, const Trajectory& traj, ControlAt&& control) {
  double total = terminal_cost(p, traj.q_end);
  for (Index i = 0; i < traj.grid.intervals(); ++i) {
    total += running_cost_on(p, traj, i, control);
  }
  return total;
}

}  // namespace

Vector PiecewiseConstantControl::operator()(double t) const {
  return U.at(static_cast<std::size_t>(grid.locate(t)));
}

ControlFunction PiecewiseConstantControl::as_function() const {
  return [copy = *this](double t) { return copy(t); };
}

PiecewiseConstantControl make_control(const SamplingGrid& grid, std::vector<Vector> U) {
  if (static_cast<Index>(U.size()) != grid.intervals()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient count does not match the grid");
  }
  for (const auto& value : U) {
    if (!value.allFinite()) {
      throw Error(ErrorCode::NonFinite, "control coefficient is not finite");
    }
  }
  return PiecewiseConstantControl{grid, std::move(U)};
}

PiecewiseConstantControl zero_control(const SamplingGrid& grid, Index m) {
  return PiecewiseConstantControl{grid, std::vector<Vector>(static_cast<std::size_t>(grid.intervals()),
                                                            Vector::Zero(m))};
}

PiecewiseConstantControl control_of(const SampledSolution& sol) { return PiecewiseConstantControl{sol.grid, sol.U}; }

Vector CostateTrajectory::at_sample(Index i) const {
  if (i < 0 || i > grid.intervals()) {
    throw Error(ErrorCode::IndexOutOfRange, "sample index " + std::to_string(i));
  }
  return i == grid.intervals() ? p_end : p[static_cast<std::size_t>(i)].front();
}

Trajectory simulate_state(const LQProblem& p, const PiecewiseConstantControl& u, int substeps) {
  check_control(p, u);
  return simulate_impl(p, u.grid, [&u](Index i, double) -> const Vector& { return u.U[static_cast<std::size_t>(i)]; },
                       substeps);
}

Trajectory simulate_state(const LQProblem& p, const SamplingGrid& grid, const ControlFunction& u, int substeps) {
  return simulate_impl(p, grid, [&u](Index, double t) { return u(t); }, substeps);
}

double terminal_cost(const LQProblem& p, const Vector& q_end) {
  const Vector dev = q_end - p.q_b;
  return 0.5 * dev.dot(p.S * dev);
}

double evaluate_cost(const LQProblem& p, const PiecewiseConstantControl& u, const Trajectory& traj) {
  check_control(p, u);
  check_same_grid(u.grid, traj.grid);
  return cost_impl(p, traj, [&u](Index i, double) -> const Vector& { return u.U[static_cast<std::size_t>(i)]; });
}

double evaluate_cost(const LQProblem& p, const ControlFunction& u, const Trajectory& traj) {
  return cost_impl(p, traj, [&u](Index, double t) { return u(t); });
}

std::vector<double> interval_running_costs(const LQProblem& p, const PiecewiseConstantControl& u,
                                           const Trajectory& traj) {
  check_control(p, u);
  check_same_grid(u.grid, traj.grid);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(traj.grid.intervals()));
  for (Index i = 0; i < traj.grid.intervals(); ++i) {
    out.push_back(running_cost_on(p, traj, i,
                                  [&u](Index j, double) -> const Vector& { return u.U[static_cast<std::size_t>(j)]; }));
  }
  return out;
}

double control_cost(const LQProblem& p, const PiecewiseConstantControl& u, int substeps) {
  return evaluate_cost(p, u, simulate_state(p, u, substeps));
}

double control_cost(const LQProblem& p, const SamplingGrid& grid, const ControlFunction& u, int substeps) {
  return evaluate_cost(p, u, simulate_state(p, grid, u, substeps));
}

CostateTrajectory simulate_costate(const LQProblem& p, const Trajectory& traj, int substeps,
                                   StateInterpolation interp) {
  check_substeps(substeps);
  if (substeps != traj.substeps) {
    throw Error(ErrorCode::NodeMismatch, "costate substeps differ from the state trajectory");
  }
  const Index N = traj.grid.intervals();
  CostateTrajectory co{traj.grid, substeps, traj.times, {}, {}};
  co.p.resize(static_cast<std::size_t>(N));
  co.p_end = -(p.S * (traj.q_end - p.q_b));

  Matrix X = co.p_end;
  Matrix w_t, x_t;
  detail::Rk4Workspace ws;
  auto generator = [&p](double t, Matrix& out) {
    p.A.evaluate_into(t, out);
    out = -out.transpose().eval();
  };
  for (Index i = N; i-- > 0;) {
    const auto idx = static_cast<std::size_t>(i);
    const auto& nodes = traj.times[idx];
    const auto& q = traj.q[idx];
    const auto& qdot = traj.qdot[idx];
    auto& out = co.p[idx];
    out.assign(nodes.size(), Vector());
    out.back() = X.col(0);
    for (std::size_t k = nodes.size() - 1; k-- > 0;) {
      // Step from tau_{k+1} back to tau_k; stage 1 needs q at the midpoint.
      const double span = nodes[k + 1] - nodes[k];
      auto forcing = [&](int stage, double t, Matrix& f) {
        Vector state;
        if (stage == 0) {
          state = q[k + 1];
        } else if (stage == 2) {
          state = q[k];
        } else if (interp == StateInterpolation::Linear) {
          state = 0.5 * (q[k] + q[k + 1]);
        } else {
          state = 0.5 * (q[k] + q[k + 1]) + (span / 8.0) * (qdot[k] - qdot[k + 1]);
        }
        p.W.evaluate_into(t, w_t);
        p.x_ref.evaluate_into(t, x_t);
        f.noalias() = w_t * (state - x_t.col(0));
      };
      detail::rk4_linear_step(generator, forcing, nodes[k + 1], -span, X, ws);
      out[k] = X.col(0);
    }
    if (!X.allFinite()) {
      throw Error(ErrorCode::NonFinite, "costate diverged on interval " + std::to_string(i));
    }
  }
  return co;
}

std::vector<Vector> pmp_residual_sampled(const LQProblem& p, const SampledSolution& sol,
                                         const CostateTrajectory& costate) {
  check_same_grid(sol.grid, costate.grid);
  const Index N = sol.grid.intervals();
  if (static_cast<Index>(sol.U.size()) != N) {
    throw Error(ErrorCode::DimensionMismatch, "solution coefficient count does not match the grid");
  }
  std::vector<Vector> residuals;
  residuals.reserve(static_cast<std::size_t>(N));
  Matrix r_t, v_t, b_t;
  for (Index i = 0; i < N; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto& nodes = costate.times[idx];
    const auto weights = detail::simpson_weights(sol.grid.h(i), costate.substeps);
    Matrix r_bar = Matrix::Zero(p.m, p.m);
    Vector rhs = Vector::Zero(p.m);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double t = nodes[k];
      p.R.evaluate_into(t, r_t);
      p.v_ref.evaluate_into(t, v_t);
      p.B.evaluate_into(t, b_t);
      r_bar += weights[k] * r_t;
      rhs += weights[k] * (r_t * v_t.col(0) + b_t.transpose() * costate.p[idx][k]);
    }
    residuals.emplace_back(sol.U[idx] - r_bar.llt().solve(rhs));
  }
  return residuals;
}

double pmp_residual_permanent(const LQProblem& p, const ControlFunction& u, int substeps) {
  const auto grid = SamplingGrid::uniform(1, p.a, p.b);
  const auto traj = simulate_state(p, grid, u, substeps);
  const auto co = simulate_costate(p, traj, substeps);
  double worst = 0.0;
  Matrix r_t, v_t, b_t;
  for (std::size_t k = 0; k < co.times[0].size(); ++k) {
    const double t = co.times[0][k];
    p.R.evaluate_into(t, r_t);
    p.v_ref.evaluate_into(t, v_t);
    p.B.evaluate_into(t, b_t);
    const Vector stationary = v_t.col(0) + r_t.llt().solve(b_t.transpose() * co.p[0][k]);
    const Vector value = u(t);
    if (!value.allFinite()) {
      throw Error(ErrorCode::NonFinite, "control not finite at t=" + std::to_string(t));
    }
    worst = std::max(worst, (value - stationary).norm());
  }
  return worst;
}

PiecewiseConstantControl averaged_control(const ControlFunction& u, const SamplingGrid& grid, int substeps) {
  check_substeps(substeps);
  std::vector<Vector> U;
  U.reserve(static_cast<std::size_t>(grid.intervals()));
  for (Index i = 0; i < grid.intervals(); ++i) {
    const auto nodes = detail::interval_nodes(grid, i, substeps);
    const auto weights = detail::simpson_weights(grid.h(i), substeps);
    Vector sum = weights[0] * u(nodes[0]);
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      sum += weights[k] * u(nodes[k]);
    }
    U.emplace_back(sum / grid.h(i));
  }
  return make_control(grid, std::move(U));
}

PiecewiseConstantControl averaged_control(const PiecewiseConstantControl& fine, const SamplingGrid& grid) {
  if (fine.grid.a() != grid.a() || fine.grid.b() != grid.b() || fine.U.empty()) {
    throw Error(ErrorCode::InvalidInterval, "averaging grids must span the same horizon");
  }
  const auto& fs = fine.grid.times();
  std::vector<Vector> U;
  U.reserve(static_cast<std::size_t>(grid.intervals()));
  for (Index i = 0; i < grid.intervals(); ++i) {
    const double lo = grid.s(i);
    const double hi = grid.s(i + 1);
    Vector sum = Vector::Zero(fine.U.front().size());
    for (std::size_t j = static_cast<std::size_t>(fine.grid.locate(lo)); j + 1 < fs.size() && fs[j] < hi; ++j) {
      const double overlap = std::min(hi, fs[j + 1]) - std::max(lo, fs[j]);
      if (overlap > 0.0) {
        sum += overlap * fine.U[j];
      }
    }
    U.emplace_back(sum / grid.h(i));
  }
  return make_control(grid, std::move(U));
}

}  // namespace sdlq
