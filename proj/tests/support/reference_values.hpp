#pragma once

// Independent reference values for the scalar benchmark
//   q' = q/2 + u, q(0) = 1, cost = 1/2 int 2 q^2 + u^2.
// Everything here is derived from closed-form antiderivatives or from a
// separate scalar integration; none of it calls into the library.

#include <cmath>
#include <vector>

namespace sdlq::testing {

/// Blocks of one interval of length h (autonomous data, so only h matters).
struct ScalarBlocks {
  double Zstep, ZB, ZWZ, ZBWZ, ZBWZB, Rbar;
};

inline ScalarBlocks analytic_blocks(double h) {
  const double eh = std::exp(h);
  const double eh2 = std::exp(0.5 * h);
  // Z(tau) = e^{tau/2}, Gamma(tau) = 2 (e^{tau/2} - 1), W = 2, R = 1.
  return ScalarBlocks{
      eh2,
      2.0 * (eh2 - 1.0),
      2.0 * (eh - 1.0),
      4.0 * (eh - 1.0 - 2.0 * (eh2 - 1.0)),
      8.0 * (eh - 1.0 - 4.0 * (eh2 - 1.0) + h),
      h,
  };
}

struct ScalarSweep {
  std::vector<double> T, P, Q, K, U, q;
  double cost = 0.0;
};

/// Scalar recursion with S = 0 on a uniform grid of N intervals over [0, 1].
inline ScalarSweep scalar_sweep(int N, double q0 = 1.0) {
  const auto blk = analytic_blocks(1.0 / N);
  ScalarSweep out;
  out.T.resize(N);
  out.P.resize(N);
  out.Q.resize(N);
  out.K.assign(N + 1, 0.0);
  for (int i = N - 1; i >= 0; --i) {
    const double k = out.K[i + 1];
    out.T[i] = blk.ZB * k * blk.ZB + blk.ZBWZB + blk.Rbar;
    out.P[i] = blk.ZB * k * blk.Zstep + blk.ZBWZ;
    out.Q[i] = blk.Zstep * k * blk.Zstep + blk.ZWZ;
    out.K[i] = out.Q[i] - out.P[i] * out.P[i] / out.T[i];
  }
  out.q.push_back(q0);
  for (int i = 0; i < N; ++i) {
    out.U.push_back(-out.P[i] * out.q[i] / out.T[i]);
    out.q.push_back(blk.Zstep * out.q[i] + blk.ZB * out.U[i]);
  }
  out.cost = 0.5 * out.K[0] * q0 * q0;
  return out;
}

/// Optimal permanent cost 1/2 k(0) from the scalar Riccati equation
/// -k' = k - k^2 + 2, k(1) = 0, by RK4 with a very small step.
inline double permanent_cost(int steps = 200000) {
  auto f = [](double k) { return -(k - k * k + 2.0); };
  double k = 0.0;
  const double dt = -1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    const double k1 = f(k);
    const double k2 = f(k + 0.5 * dt * k1);
    const double k3 = f(k + 0.5 * dt * k2);
    const double k4 = f(k + dt * k3);
    k += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return 0.5 * k;
}

inline double closed_form_control(double t) {
  const double e3 = std::exp(3.0);
  return 2.0 * (std::exp(3.0 * t) - e3) / (std::exp(1.5 * t) * (2.0 + e3));
}

}  // namespace sdlq::testing
