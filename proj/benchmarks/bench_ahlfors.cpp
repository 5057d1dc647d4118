#include <benchmark/benchmark.h>

#include "uareg/ahlfors.hpp"

namespace {

void BM_UpperAhlfors(benchmark::State& state) {
  const auto space = uareg::build_circle(static_cast<std::size_t>(state.range(0)));
  const auto grid = uareg::default_radius_grid(space);
  for (auto _ : state) benchmark::DoNotOptimize(uareg::estimate_upper_ahlfors(space, 1.0, grid).c_upper);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_UpperAhlfors)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_StrongAhlfors(benchmark::State& state) {
  const auto space = uareg::build_circle(static_cast<std::size_t>(state.range(0)));
  const auto grid = uareg::geometric_grid(2 * space.mesh(), 1.4);
  for (auto _ : state)
    benchmark::DoNotOptimize(uareg::estimate_strong_upper_ahlfors(space, 1.0, grid).c_strong);
}
BENCHMARK(BM_StrongAhlfors)->Arg(256)->Arg(512);

void BM_CompositeIntegral(benchmark::State& state) {
  const auto space = uareg::build_circle(static_cast<std::size_t>(state.range(0)));
  const auto pairs = uareg::sample_pairs(space, 2000, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        uareg::composite_integral_check(space, 1.0, 0.3, 0.3, pairs, false).measured_sup);
}
BENCHMARK(BM_CompositeIntegral)->Arg(256)->Arg(512);

}  // namespace
