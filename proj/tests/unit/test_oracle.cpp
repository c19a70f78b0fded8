#include <doctest.h>

#include <chrono>

#include "generators.hpp"
#include "reference_values.hpp"
#include "sdlq/blocks.hpp"
#include "sdlq/errors.hpp"
#include "sdlq/grid.hpp"
#include "sdlq/oracle.hpp"
#include "sdlq/registry.hpp"
#include "sdlq/simulate.hpp"

using namespace sdlq;

TEST_CASE("single-interval quadratic of the benchmark") {
  const auto p = dontchev_problem().problem;
  const auto qp = assemble_qp(p, SamplingGrid::uniform(1, 0.0, 1.0));
  const auto ref = testing::scalar_sweep(1);
  REQUIRE(qp.Hq.rows() == 1);
  CHECK(qp.Hq(0, 0) == doctest::Approx(ref.T[0]).epsilon(1e-9));
  CHECK(qp.g(0) == doctest::Approx(ref.P[0]).epsilon(1e-9));
  CHECK(qp.c == doctest::Approx(0.5 * ref.Q[0]).epsilon(1e-9));
  CHECK(solve_qp(qp)(0) == doctest::Approx(ref.U[0]).epsilon(1e-9));
}

TEST_CASE("intervals decouple without state weights") {
  LQProblem p = make_problem(2, 2, 0.0, 1.0);
  p.A = CoefficientFunction::builtin("oscillator-A");
  p.R = CoefficientFunction::from_entry_polynomials({{{2.0, 1.0}, {0.5}}, {{0.5}, {1.0, 0.0, 1.0}}});
  p.q_a = Vector::Ones(2);
  p = validate_problem(p);
  const auto grid = SamplingGrid::uniform(3, 0.0, 1.0);
  const auto qp = assemble_qp(p, grid);
  const auto blocks = compute_all_blocks(p, grid);
  Matrix expected = Matrix::Zero(6, 6);
  for (Index i = 0; i < 3; ++i) {
    expected.block(2 * i, 2 * i, 2, 2) = blocks[static_cast<std::size_t>(i)].Rbar;
  }
  CHECK((qp.Hq - expected).norm() <= 1e-10);
  CHECK(qp.g.norm() <= 1e-12);
  CHECK(qp.c == doctest::Approx(0.0));
}

TEST_CASE("the quadratic reproduces simulated costs") {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto rc = random_case(seed, {.max_intervals = 4});
    const auto grid = SamplingGrid::uniform(rc.intervals, 0.0, 1.0);
    const auto qp = assemble_qp(rc.problem, grid);
    CHECK((qp.Hq - qp.Hq.transpose()).norm() == 0.0);
    CHECK(testing::min_eigenvalue(qp.Hq) >= rc.problem.c_R * grid.min_duration() * (1.0 - 1e-6));
    for (int trial = 0; trial < 3; ++trial) {
      const Vector stacked = testing::random_vector(rng, qp.g.size(), 2.0);
      std::vector<Vector> U;
      for (Index i = 0; i < grid.intervals(); ++i) {
        U.push_back(stacked.segment(i * rc.problem.m, rc.problem.m));
      }
      const double direct = control_cost(rc.problem, make_control(grid, U));
      CHECK(std::abs(direct - qp.value(stacked)) <= 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("solve_qp examples") {
  DenseQP qp;
  qp.Hq = Matrix::Identity(2, 2);
  qp.g = (Vector(2) << 1.0, -2.0).finished();
  CHECK(solve_qp(qp).isApprox((Vector(2) << -1.0, 2.0).finished(), 1e-15));
  qp.g.setZero();
  CHECK(solve_qp(qp).isZero(0.0));
  qp.Hq(1, 1) = -1.0;
  try {
    solve_qp(qp);
    FAIL("expected QpNotPD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QpNotPD);
  }
}

TEST_CASE("cross-check on the benchmark") {
  const auto p = dontchev_problem().problem;
  for (int N : {1, 2, 5}) {
    const auto report = cross_check(p, SamplingGrid::uniform(N, 0.0, 1.0));
    CHECK(report.max_rel_diff <= 1e-6);
    CHECK(report.agrees());
    CHECK(report.abs_diffs.size() == static_cast<std::size_t>(N));
  }
}

TEST_CASE("sweep and dense quadratic agree on random problems") {
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rc = random_case(seed);
    const auto report = cross_check(rc.problem, SamplingGrid::uniform(rc.intervals, 0.0, 1.0));
    CHECK_MESSAGE(report.max_rel_diff <= 1e-6, "seed " << seed);
    CHECK(report.cost_diff <= 1e-6 * (1.0 + std::abs(report.sweep_cost)));
    CHECK(report.certificate_norm <= 1e-9 * (1.0 + report.g_norm));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 60.0);
}

TEST_CASE("named random shapes") {
  RandomProblemOptions homog{.variant = RandomVariant::Homogeneous};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto rc = random_case(seed, homog);
    if (rc.problem.n == 3 && rc.problem.m == 2) {
      CHECK(cross_check(rc.problem, SamplingGrid::uniform(4, 0.0, 1.0)).agrees());
      break;
    }
  }
  const auto rc = random_case(7, {.variant = RandomVariant::Nonautonomous});
  CHECK_FALSE(rc.problem.A.is_constant());
  CHECK(cross_check(rc.problem, SamplingGrid::uniform(rc.intervals, 0.0, 1.0)).agrees());
}

TEST_CASE("oracle size guard") {
  LQProblem p = make_problem(1, 3, 0.0, 1.0);
  p.q_a = Vector::Ones(1);
  p = validate_problem(p);
  try {
    assemble_qp(p, SamplingGrid::uniform(134, 0.0, 1.0));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
    CHECK(std::string(e.what()).find("oracle guard exceeded") != std::string::npos);
  }
}
