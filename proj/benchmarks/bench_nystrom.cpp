#include <benchmark/benchmark.h>

#include <memory>

#include "uareg/nystrom.hpp"

namespace {

std::shared_ptr<const uareg::SampledMeasureSpace> circle(benchmark::State& state) {
  return std::make_shared<const uareg::SampledMeasureSpace>(
      uareg::build_circle(static_cast<std::size_t>(state.range(0))));
}

void BM_Assemble(benchmark::State& state) {
  const auto space = circle(state);
  const auto kernel = uareg::Kernel::riesz(0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(uareg::NystromSystem::assemble(space, kernel).row_sum_norm());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assemble)->RangeMultiplier(2)->Range(128, 1024)->Complexity(benchmark::oNSquared);

void BM_Apply(benchmark::State& state) {
  const auto sys = uareg::NystromSystem::assemble(circle(state), uareg::Kernel::riesz(0.5));
  const Eigen::VectorXd f = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(sys.size()));
  for (auto _ : state) benchmark::DoNotOptimize(uareg::apply(sys, f).sum());
}
BENCHMARK(BM_Apply)->Arg(256)->Arg(1024);

void BM_SolveDirect(benchmark::State& state) {
  const auto base = uareg::NystromSystem::assemble(circle(state), uareg::Kernel::riesz(0.5));
  const auto sys = base.scaled(uareg::normalize_to(base, 0.5));
  const Eigen::VectorXd g = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(sys.size()));
  for (auto _ : state) benchmark::DoNotOptimize(uareg::solve_direct(sys, g).residual_inf);
}
BENCHMARK(BM_SolveDirect)->Arg(200)->Arg(512);

void BM_SolveNeumann(benchmark::State& state) {
  const auto base = uareg::NystromSystem::assemble(circle(state), uareg::Kernel::riesz(0.5));
  const auto sys = base.scaled(uareg::normalize_to(base, 0.5));
  const Eigen::VectorXd g = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(sys.size()));
  for (auto _ : state) benchmark::DoNotOptimize(uareg::solve_neumann(sys, g).residual_inf);
}
BENCHMARK(BM_SolveNeumann)->Arg(200)->Arg(512);

void BM_IterateKernel(benchmark::State& state) {
  const auto sys = uareg::NystromSystem::assemble(circle(state), uareg::Kernel::riesz(0.6));
  for (auto _ : state) benchmark::DoNotOptimize(uareg::iterate_kernel(sys, 3).describe());
}
BENCHMARK(BM_IterateKernel)->Arg(128)->Arg(256);

}  // namespace
