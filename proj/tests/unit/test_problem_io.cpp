#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "sdlq/errors.hpp"
#include "sdlq/problem_io.hpp"
#include "sdlq/registry.hpp"

using namespace sdlq;
using nlohmann::json;

namespace {

json scalar_doc() {
  return json::parse(R"({"a": 0, "b": 1, "n": 1, "m": 1,
                         "A": 0.5, "B": 1, "W": 2, "R": 1, "S": 0, "qa": [1]})");
}

ErrorCode code_of(const json& doc) {
  try {
    problem_from_json(doc);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an sdlq::Error");
  return ErrorCode::InvalidInput;
}

bool same_at(const CoefficientFunction& x, const CoefficientFunction& y, double t) {
  const Matrix lhs = x(t);
  const Matrix rhs = y(t);
  return lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() && (lhs - rhs).norm() <= 1e-15 * (1.0 + rhs.norm());
}

}  // namespace

TEST_CASE("scalar problem from bare numbers") {
  const auto p = problem_from_json(scalar_doc());
  CHECK(p.validated);
  CHECK(p.A(0.3)(0, 0) == 0.5);
  CHECK(p.W(0.7)(0, 0) == 2.0);
  CHECK(p.is_homogeneous());
  CHECK(p.q_b.size() == 1);
}

TEST_CASE("polynomial and builtin coefficients") {
  const auto doc = json::parse(R"({
    "a": 0, "b": 1, "n": 2, "m": 1,
    "A": {"builtin": "oscillator-A"},
    "B": {"poly": [[[0, 0.1]], [[1]]]},
    "W": [[1, 0], [0, 1]],
    "R": {"poly": [[[1, 1]]]},
    "S": [[1, 0], [0, 1]],
    "omega": {"poly": [[0], [0, 0.5]]},
    "x": [1, 0],
    "qa": [1, 0],
    "qb": [0.2, 0]
  })");
  const auto p = problem_from_json(doc);
  CHECK(p.B(2.0)(0, 0) == doctest::Approx(0.2));
  CHECK(p.R(0.5)(0, 0) == doctest::Approx(1.5));
  CHECK(p.omega.vector_at(0.4)(1) == doctest::Approx(0.2));
  CHECK(p.x_ref.vector_at(0.9)(0) == 1.0);
  CHECK(p.A.kind() == CoefficientFunction::Kind::Builtin);
  CHECK_FALSE(p.is_homogeneous());
}

TEST_CASE("malformed documents") {
  CHECK(code_of(json::array()) == ErrorCode::InvalidInput);
  auto missing = scalar_doc();
  missing.erase("R");
  CHECK(code_of(missing) == ErrorCode::InvalidInput);
  auto unknown = scalar_doc();
  unknown["A"] = json{{"builtin", "nope"}};
  CHECK(code_of(unknown) == ErrorCode::InvalidInput);
  auto ragged = scalar_doc();
  ragged["n"] = 2;
  ragged["A"] = json::parse("[[1, 2], [3]]");
  CHECK(code_of(ragged) == ErrorCode::InvalidInput);
  auto wrong = scalar_doc();
  wrong["qa"] = json::parse("[1, 2]");
  CHECK(code_of(wrong) == ErrorCode::DimensionMismatch);
  auto singular = scalar_doc();
  singular["R"] = 0;
  CHECK(code_of(singular) == ErrorCode::NotPD);
}

TEST_CASE("round trip through JSON") {
  for (const auto& name : registry_names()) {
    const auto p = find_problem(name)->problem;
    const auto back = problem_from_json(problem_to_json(p));
    CHECK(back.n == p.n);
    CHECK(back.m == p.m);
    CHECK(back.q_a == p.q_a);
    CHECK(back.q_b == p.q_b);
    CHECK(back.S == p.S);
    for (double t : {0.0, 0.25, 0.9}) {
      CHECK(same_at(back.A, p.A, t));
      CHECK(same_at(back.B, p.B, t));
      CHECK(same_at(back.W, p.W, t));
      CHECK(same_at(back.R, p.R, t));
      CHECK(same_at(back.omega, p.omega, t));
      CHECK(same_at(back.x_ref, p.x_ref, t));
      CHECK(same_at(back.v_ref, p.v_ref, t));
    }
  }
}

TEST_CASE("loading from disk") {
  const auto path = std::filesystem::temp_directory_path() / "sdlq_problem_io_test.json";
  {
    std::ofstream out(path);
    out << scalar_doc().dump();
  }
  CHECK(load_problem_file(path).n == 1);
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_problem_file(path), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_problem_file(path), Error);
}
