#include "sdlq/riccati.hpp"

#include <cmath>
#include <string>

#include "sdlq/errors.hpp"

namespace sdlq {
namespace {

void check_index(Index j, Index upper, const char* what) {
  if (j < 0 || j > upper) {
    throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " index " + std::to_string(j) +
                                                " outside [0, " + std::to_string(upper) + "]");
  }
}

}  // namespace

const Matrix& RiccatiSweep::K(Index j) const {
  check_index(j, intervals(), "K");
  return j == intervals() ? K_terminal : steps[static_cast<std::size_t>(j)].K;
}

const Vector& RiccatiSweep::J(Index j) const {
  check_index(j, intervals(), "J");
  return j == intervals() ? J_terminal : steps[static_cast<std::size_t>(j)].J;
}

double RiccatiSweep::Y(Index j) const {
  check_index(j, intervals(), "Y");
  return j == intervals() ? Y_terminal : steps[static_cast<std::size_t>(j)].Y;
}

RiccatiSweep backward_sweep(const std::vector<IntervalBlocks>& blocks, const Matrix& S) {
  if (blocks.empty()) {
    throw Error(ErrorCode::InvalidInput, "backward sweep needs at least one interval");
  }
  const Index n = S.rows();
  RiccatiSweep sweep;
  sweep.K_terminal = S;
  sweep.J_terminal = Vector::Zero(n);
  sweep.Y_terminal = 0.0;
  sweep.steps.resize(blocks.size());

  const Matrix* K_next = &sweep.K_terminal;
  const Vector* J_next = &sweep.J_terminal;
  double Y_next = 0.0;
  for (std::size_t idx = blocks.size(); idx-- > 0;) {
    const IntervalBlocks& blk = blocks[idx];
    if (blk.interval != static_cast<Index>(idx) || blk.Zstep.rows() != n) {
      throw Error(ErrorCode::DimensionMismatch, "blocks out of order or mis-shaped at " + std::to_string(idx));
    }
    SweepStep& st = sweep.steps[idx];
    st.i = static_cast<Index>(idx);

    const Matrix KZ = *K_next * blk.Zstep;
    const Matrix KZB = *K_next * blk.ZB;
    const Vector KZO = *K_next * blk.ZOmega;

    st.F = blk.ZOmega.dot(KZO) + blk.WZOmegaX2 + blk.RV2 + 2.0 * J_next->dot(blk.ZOmega) + Y_next;
    st.G = blk.Zstep.transpose() * KZO + blk.ZWZOmegaX + blk.Zstep.transpose() * *J_next;
    st.H = blk.ZB.transpose() * KZO + blk.ZBWZOmegaX - blk.RV + blk.ZB.transpose() * *J_next;
    st.P = blk.ZB.transpose() * KZ + blk.ZBWZ;
    st.Q = blk.Zstep.transpose() * KZ + blk.ZWZ;
    st.Q = 0.5 * (st.Q + st.Q.transpose()).eval();
    st.T = blk.ZB.transpose() * KZB + blk.ZBWZB + blk.Rbar;
    st.T = 0.5 * (st.T + st.T.transpose()).eval();

    st.T_factor.compute(st.T);
    if (st.T_factor.info() != Eigen::Success) {
      throw Error(ErrorCode::TNotPD, "T_" + std::to_string(idx) + " is not positive-definite");
    }
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(st.T, Eigen::EigenvaluesOnly);
    st.T_condition = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();

    st.gain = -st.T_factor.solve(st.P);
    st.offset = -st.T_factor.solve(st.H);
    // K = Q - P^T T^{-1} P, J = G - P^T T^{-1} H, Y = F - <T^{-1} H, H>.
    st.K = st.Q + st.P.transpose() * st.gain;
    st.K = 0.5 * (st.K + st.K.transpose()).eval();
    st.J = st.G + st.P.transpose() * st.offset;
    st.Y = st.F + st.offset.dot(st.H);

    if (!st.K.allFinite() || !st.J.allFinite() || !std::isfinite(st.Y)) {
      throw Error(ErrorCode::NonFinite, "sweep produced non-finite values at " + std::to_string(idx));
    }
    K_next = &st.K;
    J_next = &st.J;
    Y_next = st.Y;
  }
  return sweep;
}

SampledSolution forward_synthesis(const RiccatiSweep& sweep, const std::vector<IntervalBlocks>& blocks,
                                  const SamplingGrid& grid, const Vector& q_a) {
  const Index N = sweep.intervals();
  if (static_cast<Index>(blocks.size()) != N || grid.intervals() != N) {
    throw Error(ErrorCode::DimensionMismatch, "sweep, blocks and grid disagree on the interval count");
  }
  if (q_a.size() != sweep.K_terminal.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "initial state has the wrong length");
  }
  SampledSolution sol{grid, {}, {}, 0.0, std::nullopt};
  sol.U.reserve(static_cast<std::size_t>(N));
  sol.q_nodes.reserve(static_cast<std::size_t>(N + 1));
  Vector q = q_a;
  sol.q_nodes.push_back(q);
  for (Index i = 0; i < N; ++i) {
    const auto& st = sweep.steps[static_cast<std::size_t>(i)];
    const auto& blk = blocks[static_cast<std::size_t>(i)];
    Vector u = st.gain * q + st.offset;
    q = blk.Zstep * q + blk.ZB * u + blk.ZOmega;
    sol.U.push_back(std::move(u));
    // ZOmega of the last interval carries -q_b; put it back to report q(b).
    sol.q_nodes.push_back(q + blk.terminal_shift);
  }
  sol.predicted_cost = value_function(sweep, 0, q_a);
  return sol;
}

double value_function(const RiccatiSweep& sweep, Index j, const Vector& y) {
  check_index(j, sweep.intervals(), "value function");
  const Matrix& K = sweep.K(j);
  if (y.size() != K.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "value function argument has the wrong length");
  }
  return 0.5 * y.dot(K * y) + sweep.J(j).dot(y) + 0.5 * sweep.Y(j);
}

std::pair<Matrix, Vector> closed_loop_gain(const RiccatiSweep& sweep, Index i) {
  check_index(i, sweep.intervals() - 1, "gain");
  const auto& st = sweep.steps[static_cast<std::size_t>(i)];
  return {st.gain, st.offset};
}

SolveResult solve_sampled(const LQProblem& p, const SamplingGrid& grid, int substeps) {
  if (!p.validated) {
    throw Error(ErrorCode::InvalidInput, "problem must be validated before solving");
  }
  if (grid.a() != p.a || grid.b() != p.b) {
    throw Error(ErrorCode::InvalidInterval, "grid does not span the problem horizon");
  }
  auto blocks = compute_all_blocks(p, grid, substeps);
  auto sweep = backward_sweep(blocks, p.S);
  auto solution = forward_synthesis(sweep, blocks, grid, p.q_a);
  return SolveResult{std::move(blocks), std::move(sweep), std::move(solution)};
}

}  // namespace sdlq
