#pragma once

#include <vector>

#include "sdlq/coefficient.hpp"
#include "sdlq/grid.hpp"
#include "sdlq/types.hpp"

namespace sdlq::detail {

/// Node times tau_k = s_i + k h_i / (2M), k = 0..2M, with the last snapped to s_{i+1}.
std::vector<double> interval_nodes(const SamplingGrid& grid, Index i, int substeps);

/// Composite Simpson weights for 2M+1 nodes of an interval of length h.
std::vector<double> simpson_weights(double h, int substeps);

/// Scratch storage for rk4_linear_step, reused across steps.
struct Rk4Workspace {
  Matrix a0, a_mid, a1;
  Matrix f0, f_mid, f1;
  Matrix k1, k2, k3, k4, tmp;
};

/// One classical RK4 step of X' = A(t) X + F(t) from t to t + dt (dt may be
/// negative). `generator(t, out)` writes A(t); `forcing(stage, t, out)` writes
/// F(t), with stage 0, 1, 2 for the start, midpoint and end of the step.
template <class Generator, class Forcing>
void rk4_linear_step(Generator&& generator, Forcing&& forcing, double t, double dt, Matrix& X,
                     Rk4Workspace& ws) {
  const double t_mid = t + 0.5 * dt;
  const double t_end = t + dt;
  generator(t, ws.a0);
  generator(t_mid, ws.a_mid);
  generator(t_end, ws.a1);
  forcing(0, t, ws.f0);
  forcing(1, t_mid, ws.f_mid);
  forcing(2, t_end, ws.f1);

  ws.k1.noalias() = ws.a0 * X;
  ws.k1 += ws.f0;
  ws.tmp = X + (0.5 * dt) * ws.k1;
  ws.k2.noalias() = ws.a_mid * ws.tmp;
  ws.k2 += ws.f_mid;
  ws.tmp = X + (0.5 * dt) * ws.k2;
  ws.k3.noalias() = ws.a_mid * ws.tmp;
  ws.k3 += ws.f_mid;
  ws.tmp = X + dt * ws.k3;
  ws.k4.noalias() = ws.a1 * ws.tmp;
  ws.k4 += ws.f1;
  X += (dt / 6.0) * (ws.k1 + 2.0 * ws.k2 + 2.0 * ws.k3 + ws.k4);
}

inline auto generator_of(const CoefficientFunction& A) {
  return [&A](double t, Matrix& out) { A.evaluate_into(t, out); };
}

}  // namespace sdlq::detail
