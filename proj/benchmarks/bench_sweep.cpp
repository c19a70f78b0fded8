#include <benchmark/benchmark.h>

#include "sdlq/blocks.hpp"
#include "sdlq/grid.hpp"
#include "sdlq/oracle.hpp"
#include "sdlq/registry.hpp"
#include "sdlq/riccati.hpp"
#include "sdlq/simulate.hpp"

namespace {

sdlq::LQProblem demo() { return sdlq::find_problem("timevarying-demo")->problem; }

void BM_Blocks(benchmark::State& state) {
  const auto p = demo();
  const auto grid = sdlq::SamplingGrid::uniform(state.range(0), p.a, p.b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sdlq::compute_all_blocks(p, grid));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Blocks)->RangeMultiplier(4)->Range(4, 256)->Complexity();

void BM_Sweep(benchmark::State& state) {
  const auto p = demo();
  const auto grid = sdlq::SamplingGrid::uniform(state.range(0), p.a, p.b);
  const auto blocks = sdlq::compute_all_blocks(p, grid);
  for (auto _ : state) {
    const auto sweep = sdlq::backward_sweep(blocks, p.S);
    benchmark::DoNotOptimize(sdlq::forward_synthesis(sweep, blocks, grid, p.q_a));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Sweep)->RangeMultiplier(4)->Range(4, 256)->Complexity();

void BM_Costate(benchmark::State& state) {
  const auto p = demo();
  const auto grid = sdlq::SamplingGrid::uniform(state.range(0), p.a, p.b);
  const auto traj = sdlq::simulate_state(p, sdlq::control_of(sdlq::solve_sampled(p, grid).solution));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sdlq::simulate_costate(p, traj));
  }
}
BENCHMARK(BM_Costate)->Arg(16)->Arg(64);

void BM_OracleAssemble(benchmark::State& state) {
  const auto p = demo();
  const auto grid = sdlq::SamplingGrid::uniform(state.range(0), p.a, p.b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sdlq::assemble_qp(p, grid, 16));
  }
}
BENCHMARK(BM_OracleAssemble)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
