#include "sdlq/transition.hpp"

#include <string>

#include "sdlq/detail/rk4.hpp"
#include "sdlq/errors.hpp"

namespace sdlq {
namespace detail {

std::vector<double> interval_nodes(const SamplingGrid& grid, Index i, int substeps) {
  const auto steps = static_cast<std::size_t>(2 * substeps);
  const double start = grid.s(i);
  const double end = grid.s(i + 1);
  const double dt = grid.h(i) / static_cast<double>(steps);
  std::vector<double> nodes(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) {
    nodes[k] = start + static_cast<double>(k) * dt;
  }
  nodes[steps] = end;
  return nodes;
}

std::vector<double> simpson_weights(double h, int substeps) {
  const auto steps = static_cast<std::size_t>(2 * substeps);
  const double third = h / static_cast<double>(steps) / 3.0;
  std::vector<double> w(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k == 0 || k == steps) {
      w[k] = third;
    } else {
      w[k] = (k % 2 == 1 ? 4.0 : 2.0) * third;
    }
  }
  return w;
}

}  // namespace detail

IntervalPropagation propagate_interval(const LQProblem& p, const SamplingGrid& grid, Index i, int substeps) {
  if (i < 0 || i >= grid.intervals()) {
    throw Error(ErrorCode::IndexOutOfRange, "interval index " + std::to_string(i));
  }
  if (substeps < 1) {
    throw Error(ErrorCode::InvalidInput, "substeps must be at least 1");
  }
  const Index n = p.n;
  const Index m = p.m;

  IntervalPropagation out;
  out.interval = i;
  out.substeps = substeps;
  out.nodes = detail::interval_nodes(grid, i, substeps);
  const std::size_t count = out.nodes.size();
  out.Z.reserve(count);
  out.Gamma.reserve(count);
  out.xi.reserve(count);

  // X = [Z | Gamma | xi], forcing F = [0 | B | omega].
  Matrix X = Matrix::Zero(n, n + m + 1);
  X.leftCols(n).setIdentity();
  Matrix b_t;
  Matrix w_t;
  auto forcing = [&](int, double t, Matrix& f) {
    f.setZero(n, n + m + 1);
    p.B.evaluate_into(t, b_t);
    p.omega.evaluate_into(t, w_t);
    f.middleCols(n, m) = b_t;
    f.col(n + m) = w_t.col(0);
  };

  detail::Rk4Workspace ws;
  auto record = [&] {
    out.Z.emplace_back(X.leftCols(n));
    out.Gamma.emplace_back(X.middleCols(n, m));
    out.xi.emplace_back(X.col(n + m));
  };
  record();
  for (std::size_t k = 0; k + 1 < count; ++k) {
    detail::rk4_linear_step(detail::generator_of(p.A), forcing, out.nodes[k], out.nodes[k + 1] - out.nodes[k], X, ws);
    record();
  }
  if (!X.allFinite()) {
    throw Error(ErrorCode::NonFinite, "transition propagation diverged on interval " + std::to_string(i));
  }
  return out;
}

Matrix transition_matrix(const LQProblem& p, double t, double s, int substeps) {
  if (substeps < 1) {
    throw Error(ErrorCode::InvalidInput, "substeps must be at least 1");
  }
  Matrix Z = Matrix::Identity(p.n, p.n);
  if (t == s) {
    return Z;
  }
  const int steps = 2 * substeps;
  const double dt = (t - s) / steps;
  auto no_forcing = [&](int, double, Matrix& f) { f.setZero(p.n, p.n); };
  detail::Rk4Workspace ws;
  for (int k = 0; k < steps; ++k) {
    const double from = s + k * dt;
    const double to = k == steps - 1 ? t : s + (k + 1) * dt;
    detail::rk4_linear_step(detail::generator_of(p.A), no_forcing, from, to - from, Z, ws);
  }
  if (!Z.allFinite()) {
    throw Error(ErrorCode::NonFinite, "transition matrix diverged");
  }
  return Z;
}

}  // namespace sdlq
