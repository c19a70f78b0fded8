#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "sdlq/problem.hpp"

namespace sdlq {

/// Problem file layout: `a, b, n, m, A, B, W, R, S, omega, x, v, qa, qb`.
/// Matrices are nested arrays, `{"poly": [[[c0, c1, ...], ...], ...]}` with
/// per-entry coefficients lowest degree first, or `{"builtin": "<name>"}`.
/// Vectors are flat arrays or `{"poly": [[c0, ...], ...]}`. A bare number is
/// accepted for 1x1 data. omega, x, v, qb default to zero.
/// Returns the problem validated.
LQProblem problem_from_json(const nlohmann::json& doc);
LQProblem load_problem_file(const std::filesystem::path& path);

/// Inverse of problem_from_json for constant/polynomial data (builtins by name).
nlohmann::json problem_to_json(const LQProblem& p);

}  // namespace sdlq
