#include <benchmark/benchmark.h>

#include "radiant/kernel.hpp"
#include "radiant/medium.hpp"

namespace {

void BM_AssembleMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sample = radiant::uniform_ball_sample(n, 5.0, 1);
  const radiant::PhysicalParams params{1.0, 0.3, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(radiant::assemble_matrix(sample, params));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssembleMatrix)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_UniformBallSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(radiant::uniform_ball_sample(n, 8.0, 7));
}
BENCHMARK(BM_UniformBallSample)->Arg(2000);

}  // namespace
