#include <benchmark/benchmark.h>

#include "radiant/kernel.hpp"
#include "radiant/medium.hpp"
#include "radiant/spectra.hpp"

namespace {

void BM_Eigendecompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const bool vectors = state.range(1) != 0;
  const auto m = radiant::assemble_matrix(radiant::uniform_ball_sample(n, 4.0, 3),
                                          radiant::PhysicalParams{});
  for (auto _ : state) benchmark::DoNotOptimize(radiant::eigendecompose(m, vectors));
}
BENCHMARK(BM_Eigendecompose)
    ->ArgsProduct({{64, 256, 512}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
