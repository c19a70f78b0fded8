#include "sdlq/blocks.hpp"

#include <string>

#include "sdlq/detail/rk4.hpp"
#include "sdlq/errors.hpp"

namespace sdlq {
namespace {

void symmetrize(Matrix& m) { m = 0.5 * (m + m.transpose()).eval(); }

}  // namespace

IntervalBlocks compute_blocks(const LQProblem& p, const SamplingGrid& grid, Index i,
                              const IntervalPropagation& prop) {
  if (i < 0 || i >= grid.intervals()) {
    throw Error(ErrorCode::IndexOutOfRange, "interval index " + std::to_string(i));
  }
  const auto expected = detail::interval_nodes(grid, i, prop.substeps);
  if (prop.interval != i || prop.nodes != expected || prop.Z.size() != expected.size() ||
      prop.Gamma.size() != expected.size() || prop.xi.size() != expected.size()) {
    throw Error(ErrorCode::NodeMismatch, "propagation does not belong to interval " + std::to_string(i));
  }
  const Index n = p.n;
  const Index m = p.m;
  const bool last = i == grid.intervals() - 1;

  IntervalBlocks blk;
  blk.interval = i;
  blk.Zstep = prop.Z.back();
  blk.ZB = prop.Gamma.back();
  blk.terminal_shift = last ? p.q_b : Vector::Zero(n);
  blk.ZOmega = prop.xi.back() - blk.terminal_shift;
  blk.ZWZ = Matrix::Zero(n, n);
  blk.ZBWZ = Matrix::Zero(m, n);
  blk.ZBWZB = Matrix::Zero(m, m);
  blk.ZBWZOmegaX = Vector::Zero(m);
  blk.ZWZOmegaX = Vector::Zero(n);
  blk.Rbar = Matrix::Zero(m, m);
  blk.RV = Vector::Zero(m);

  const auto weights = detail::simpson_weights(grid.h(i), prop.substeps);
  Matrix w_t, r_t, x_t, v_t, wz, wg;
  Vector d, wd, rv;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const double t = expected[k];
    const double wk = weights[k];
    p.W.evaluate_into(t, w_t);
    p.R.evaluate_into(t, r_t);
    p.x_ref.evaluate_into(t, x_t);
    p.v_ref.evaluate_into(t, v_t);
    const Matrix& Z = prop.Z[k];
    const Matrix& G = prop.Gamma[k];
    d = prop.xi[k] - x_t.col(0);

    wz.noalias() = w_t * Z;
    wg.noalias() = w_t * G;
    wd.noalias() = w_t * d;
    rv.noalias() = r_t * v_t.col(0);

    blk.ZWZ.noalias() += wk * (Z.transpose() * wz);
    blk.ZBWZ.noalias() += wk * (G.transpose() * wz);
    blk.ZBWZB.noalias() += wk * (G.transpose() * wg);
    blk.ZBWZOmegaX.noalias() += wk * (G.transpose() * wd);
    blk.ZWZOmegaX.noalias() += wk * (Z.transpose() * wd);
    blk.WZOmegaX2 += wk * d.dot(wd);
    blk.Rbar += wk * r_t;
    blk.RV += wk * rv;
    blk.RV2 += wk * v_t.col(0).dot(rv);
  }
  symmetrize(blk.ZWZ);
  symmetrize(blk.ZBWZB);
  symmetrize(blk.Rbar);
  return blk;
}

std::vector<IntervalBlocks> compute_all_blocks(const LQProblem& p, const SamplingGrid& grid, int substeps) {
  std::vector<IntervalBlocks> out;
  out.reserve(static_cast<std::size_t>(grid.intervals()));
  for (Index i = 0; i < grid.intervals(); ++i) {
    try {
      out.push_back(compute_blocks(p, grid, i, propagate_interval(p, grid, i, substeps)));
    } catch (const Error& e) {
      throw Error(e.code(), "interval " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace sdlq
