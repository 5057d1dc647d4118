#include <benchmark/benchmark.h>

#include "uareg/kernels.hpp"
#include "uareg/regularity.hpp"

namespace {

void BM_HolderSeminorm(benchmark::State& state) {
  const auto space = uareg::build_circle(static_cast<std::size_t>(state.range(0)));
  const auto f = uareg::evaluate_datum(uareg::parse_datum("distpow:0.5"), space);
  const auto modulus = uareg::Modulus::power(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(uareg::holder_seminorm(f, space, modulus).seminorm);
}
BENCHMARK(BM_HolderSeminorm)->Arg(256)->Arg(1024);

void BM_SmoothnessSeminorm(benchmark::State& state) {
  const auto space = uareg::build_circle(static_cast<std::size_t>(state.range(0)));
  const auto kernel = uareg::Kernel::riesz(0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(uareg::smoothness_seminorm(kernel, space, 1.5, 1.0).value);
}
BENCHMARK(BM_SmoothnessSeminorm)->Arg(128)->Arg(256);

void BM_ModulusCheck(benchmark::State& state) {
  const auto grid = uareg::modulus_t_grid();
  const auto modulus =
      uareg::Modulus::max_of({uareg::Modulus::power(1.0), uareg::Modulus::log_power(0.5)});
  for (auto _ : state) benchmark::DoNotOptimize(uareg::check_modulus_conditions(modulus, grid).passed);
}
BENCHMARK(BM_ModulusCheck);

}  // namespace
