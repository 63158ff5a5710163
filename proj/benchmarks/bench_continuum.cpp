#include <benchmark/benchmark.h>

#include "radiant/continuum.hpp"

namespace {

void BM_KernelTransformQuadrature(benchmark::State& state) {
  const radiant::PhysicalParams params{1.0, 0.1, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(radiant::kernel_transform_quadrature(0.8, params, 1e-9));
  }
}
BENCHMARK(BM_KernelTransformQuadrature)->Unit(benchmark::kMicrosecond);

void BM_DispersionCurve(benchmark::State& state) {
  const radiant::PhysicalParams params{1.0, 0.3, 1.0};
  const auto points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(radiant::dispersion_curve(params, 0.0, 3.0, points));
  }
}
BENCHMARK(BM_DispersionCurve)->Arg(400)->Arg(10000);

}  // namespace
