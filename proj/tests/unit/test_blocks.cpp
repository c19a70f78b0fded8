#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "reference_values.hpp"
#include "sdlq/blocks.hpp"
#include "sdlq/errors.hpp"
#include "sdlq/grid.hpp"
#include "sdlq/registry.hpp"
#include "sdlq/transition.hpp"

using namespace sdlq;

namespace {

bool same(const Matrix& lhs, const Matrix& rhs) {
  return lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() && (lhs.array() == rhs.array()).all();
}

bool same_blocks(const IntervalBlocks& x, const IntervalBlocks& y) {
  return same(x.Zstep, y.Zstep) && same(x.ZB, y.ZB) && same(x.ZOmega, y.ZOmega) && same(x.ZWZ, y.ZWZ) &&
         same(x.ZBWZ, y.ZBWZ) && same(x.ZBWZB, y.ZBWZB) && same(x.ZBWZOmegaX, y.ZBWZOmegaX) &&
         same(x.ZWZOmegaX, y.ZWZOmegaX) && x.WZOmegaX2 == y.WZOmegaX2 && same(x.Rbar, y.Rbar) &&
         same(x.RV, y.RV) && x.RV2 == y.RV2;
}

double rel(const Matrix& x, const Matrix& y) { return (x - y).norm() / std::max(1.0, y.norm()); }

double max_rel_change(const IntervalBlocks& x, const IntervalBlocks& y) {
  double worst = 0.0;
  for (double r : {rel(x.Zstep, y.Zstep), rel(x.ZB, y.ZB), rel(x.ZOmega, y.ZOmega), rel(x.ZWZ, y.ZWZ),
                   rel(x.ZBWZ, y.ZBWZ), rel(x.ZBWZB, y.ZBWZB), rel(x.ZBWZOmegaX, y.ZBWZOmegaX),
                   rel(x.ZWZOmegaX, y.ZWZOmegaX), std::abs(x.WZOmegaX2 - y.WZOmegaX2) / std::max(1.0, std::abs(y.WZOmegaX2)),
                   rel(x.Rbar, y.Rbar), rel(x.RV, y.RV), std::abs(x.RV2 - y.RV2) / std::max(1.0, std::abs(y.RV2))}) {
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace

TEST_CASE("scalar benchmark blocks match closed forms") {
  const auto p = dontchev_problem().problem;
  for (int N : {1, 4, 7}) {
    const auto grid = SamplingGrid::uniform(N, 0.0, 1.0);
    const auto blocks = compute_all_blocks(p, grid);
    REQUIRE(blocks.size() == static_cast<std::size_t>(N));
    const auto ref = testing::analytic_blocks(1.0 / N);
    for (const auto& blk : blocks) {
      CHECK(blk.Zstep(0, 0) == doctest::Approx(ref.Zstep).epsilon(1e-10));
      CHECK(blk.ZB(0, 0) == doctest::Approx(ref.ZB).epsilon(1e-10));
      CHECK(blk.ZWZ(0, 0) == doctest::Approx(ref.ZWZ).epsilon(1e-10));
      CHECK(blk.ZBWZ(0, 0) == doctest::Approx(ref.ZBWZ).epsilon(1e-9));
      CHECK(blk.ZBWZB(0, 0) == doctest::Approx(ref.ZBWZB).epsilon(1e-9));
      CHECK(blk.Rbar(0, 0) == doctest::Approx(ref.Rbar).epsilon(1e-14));
    }
  }
  const auto four = compute_all_blocks(p, SamplingGrid::uniform(4, 0.0, 1.0));
  CHECK(four[2].Zstep(0, 0) == doctest::Approx(std::exp(0.125)).epsilon(1e-12));
}

TEST_CASE("homogeneous problems have zero affine blocks") {
  for (std::uint64_t seed = 0; seed < 30; seed += 3) {
    const auto rc = random_case(seed, {.variant = RandomVariant::Homogeneous});
    const auto blocks = compute_all_blocks(rc.problem, SamplingGrid::uniform(rc.intervals, 0.0, 1.0));
    for (const auto& blk : blocks) {
      CHECK(blk.ZOmega.isZero(0.0));
      CHECK(blk.ZBWZOmegaX.isZero(0.0));
      CHECK(blk.ZWZOmegaX.isZero(0.0));
      CHECK(blk.WZOmegaX2 == 0.0);
      CHECK(blk.RV.isZero(0.0));
      CHECK(blk.RV2 == 0.0);
    }
  }
}

TEST_CASE("terminal target enters only the last interval") {
  const auto p = find_problem("timevarying-demo")->problem;
  const auto grid = SamplingGrid::uniform(3, 0.0, 1.0);
  const auto blocks = compute_all_blocks(p, grid);
  const auto prop = propagate_interval(p, grid, 2);
  CHECK(blocks[0].terminal_shift.isZero(0.0));
  CHECK(blocks[2].terminal_shift == p.q_b);
  CHECK((blocks[2].ZOmega - (prop.xi.back() - p.q_b)).norm() == 0.0);
}

TEST_CASE("blocks do not depend on the initial state") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rc = random_case(seed);
    const auto grid = SamplingGrid::uniform(rc.intervals, 0.0, 1.0);
    auto other = rc.problem;
    other.q_a = 7.0 * Vector::Ones(other.n);
    const auto x = compute_all_blocks(rc.problem, grid);
    const auto y = compute_all_blocks(other, grid);
    for (std::size_t i = 0; i < x.size(); ++i) {
      CHECK(same_blocks(x[i], y[i]));
    }
  }
}

TEST_CASE("tail grids reproduce trailing blocks bitwise") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto rc = random_case(seed, {.max_intervals = 6});
    const Index N = std::max<Index>(rc.intervals, 2);
    const auto grid = SamplingGrid::uniform(N, 0.0, 1.0);
    const auto full = compute_all_blocks(rc.problem, grid);
    const Index j = 1 + static_cast<Index>(seed % static_cast<std::uint64_t>(N - 1));
    const auto restarted = rc.problem.restarted(grid.s(j), testing::random_vector(rng, rc.problem.n));
    const auto tail = compute_all_blocks(restarted, grid.tail(j));
    REQUIRE(tail.size() == static_cast<std::size_t>(N - j));
    for (std::size_t k = 0; k < tail.size(); ++k) {
      CHECK(same_blocks(tail[k], full[static_cast<std::size_t>(j) + k]));
    }
  }
}

TEST_CASE("doubling the substep count changes blocks negligibly") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto rc = random_case(seed);
    const auto grid = SamplingGrid::uniform(rc.intervals, 0.0, 1.0);
    const auto coarse = compute_all_blocks(rc.problem, grid, 64);
    const auto fine = compute_all_blocks(rc.problem, grid, 128);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      CHECK(max_rel_change(coarse[i], fine[i]) <= 1e-8);
    }
  }
}

TEST_CASE("Rbar inherits coercivity of R and quadratic blocks are PSD") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto rc = random_case(seed);
    const auto grid = SamplingGrid::uniform(rc.intervals, 0.0, 1.0);
    for (const auto& blk : compute_all_blocks(rc.problem, grid)) {
      const double h = grid.h(blk.interval);
      CHECK(testing::min_eigenvalue(blk.Rbar) >= rc.problem.c_R * h * (1.0 - 1e-9));
      CHECK(testing::min_eigenvalue(blk.ZWZ) >= -1e-12);
      CHECK(testing::min_eigenvalue(blk.ZBWZB) >= -1e-12);
      CHECK(same(blk.ZWZ, blk.ZWZ.transpose()));
      CHECK(same(blk.Rbar, blk.Rbar.transpose()));
    }
  }
}

TEST_CASE("mismatched propagation is rejected") {
  const auto p = dontchev_problem().problem;
  const auto grid = SamplingGrid::uniform(2, 0.0, 1.0);
  const auto prop = propagate_interval(p, grid, 0);
  try {
    compute_blocks(p, grid, 1, prop);
    FAIL("expected NodeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NodeMismatch);
  }
}
