#pragma once

#include "sdlq/coefficient.hpp"
#include "sdlq/types.hpp"

namespace sdlq {

/// Number of equally spaced times at which PSD/PD assumptions are probed.
inline constexpr int kDefaultProbes = 33;
/// Absolute floor on the smallest eigenvalue of R(t).
inline constexpr double kTolPD = 1e-10;

/// Linear-quadratic problem on [a, b]:
///
///   q' = A q + B u + omega,  q(a) = q_a,
///   C = 1/2 <S (q(b) - q_b), q(b) - q_b>
///     + 1/2 int <W (q - x), q - x> + <R (u - v), u - v> dt.
struct LQProblem {
  double a = 0.0;
  double b = 1.0;
  Index n = 0;
  Index m = 0;

  CoefficientFunction A;
  CoefficientFunction B;
  CoefficientFunction W;
  CoefficientFunction R;
  Matrix S;
  CoefficientFunction omega;
  CoefficientFunction x_ref;
  CoefficientFunction v_ref;
  Vector q_a;
  Vector q_b;

  bool validated = false;
  /// Smallest eigenvalue of R over the probe times, filled by validation.
  double c_R = 0.0;

  /// q_b, omega, x and v all identically zero.
  bool is_homogeneous() const;

  /// Same data with q_b, omega, x, v zeroed (validation flag kept).
  LQProblem homogenized() const;

  /// Same data restarted at time `start` from state `state`.
  LQProblem restarted(double start, Vector state) const;
};

/// Zero-filled problem of the given shape on [a, b]; callers fill in data.
LQProblem make_problem(Index n, Index m, double a, double b);

/// Checks dimensions, symmetrizes S, W, R and verifies PSD/PD at `probes`
/// equally spaced times. Probing is a practical guard: the assumptions are
/// continuous-time and are not proven by finitely many checks.
LQProblem validate_problem(LQProblem p, int probes = kDefaultProbes);

}  // namespace sdlq
