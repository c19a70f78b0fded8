#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdlq/problem.hpp"
#include "sdlq/simulate.hpp"

namespace sdlq {

struct ProblemRegistryEntry {
  std::string name;
  std::string description;
  LQProblem problem;
  /// Closed-form optimal permanent control, when one is known.
  std::optional<ControlFunction> reference_control;
  std::string reference_note;
};

/// Names of all built-in problems, in registration order.
std::vector<std::string> registry_names();

/// Validated registry entry; std::nullopt for an unknown name.
std::optional<ProblemRegistryEntry> find_problem(std::string_view name);

/// Scalar problem: q' = q/2 + u, q(0) = 1, minimize int_0^1 q^2 + u^2/2.
ProblemRegistryEntry dontchev_problem();

/// Its optimal permanent control 2(e^{3t} - e^3) / (e^{3t/2} (2 + e^3)).
double dontchev_optimal_control(double t);

enum class RandomVariant { Homogeneous, Nonhomogeneous, Nonautonomous };

struct RandomCase {
  std::uint64_t seed = 0;
  RandomVariant variant = RandomVariant::Homogeneous;
  LQProblem problem;
  /// Suggested uniform interval count.
  Index intervals = 1;
};

struct RandomProblemOptions {
  Index max_n = 4;
  Index max_m = 3;
  Index max_intervals = 8;
  /// Lower bound on the eigenvalues of R(t), R = c_R I + M^T M.
  double c_R = 0.5;
  /// Overrides the seed-derived variant (seed % 3 otherwise).
  std::optional<RandomVariant> variant;
};

/// Reproducible random problem on [0, 1]; validated. W = M^T M and
/// R = c_R I + M^T M so validation always passes.
RandomCase random_case(std::uint64_t seed, const RandomProblemOptions& options = {});

std::string_view to_string(RandomVariant variant);

}  // namespace sdlq
