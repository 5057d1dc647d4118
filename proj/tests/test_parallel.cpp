#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "uareg/ahlfors.hpp"
#include "uareg/kernels.hpp"
#include "uareg/nystrom.hpp"
#include "uareg/parallel.hpp"
#include "uareg/regularity.hpp"

using namespace uareg;

namespace {

struct WorkerEnv {
  explicit WorkerEnv(const char* value) { ::setenv("UAREG_WORKERS", value, 1); }
  ~WorkerEnv() { ::unsetenv("UAREG_WORKERS"); }
};

struct Snapshot {
  double c_upper;
  double c_strong;
  double riesz;
  double potential;
  double smoothness;
  double seminorm;
  Eigen::VectorXd applied;
  Eigen::VectorXd mu;
};

Snapshot snapshot() {
  const auto sp = std::make_shared<const SampledMeasureSpace>(build_circle(300));
  const auto grid = default_radius_grid(*sp);
  Snapshot s;
  s.c_upper = estimate_upper_ahlfors(*sp, 1.0, grid).c_upper;
  s.c_strong = *estimate_strong_upper_ahlfors(*sp, 1.0, grid).c_strong;
  s.riesz = riesz_integral(*sp, 7, 0.5);
  s.potential = potential_norm(Kernel::riesz(0.5), *sp, 0.5);
  s.smoothness = smoothness_seminorm(Kernel::riesz(0.5), *sp, 1.5, 1.0).value;
  const auto g = evaluate_datum(parse_datum("distpow:0.5"), *sp);
  s.seminorm = holder_seminorm(g, *sp, Modulus::power(0.5)).seminorm;
  const auto sys = NystromSystem::assemble(sp, Kernel::riesz(0.5));
  s.applied = apply(sys, g);
  s.mu = solve_direct(sys.scaled(normalize_to(sys, 0.5)), g).mu;
  return s;
}

}  // namespace

TEST_CASE("worker count parsing") {
  ::unsetenv("UAREG_WORKERS");
  CHECK(worker_count() == 1);
  {
    WorkerEnv env("4");
    CHECK(worker_count() == 4);
  }
  {
    WorkerEnv env("zero");
    CHECK(worker_count() == 1);
  }
  {
    WorkerEnv env("0");
    CHECK(worker_count() == 1);
  }
}

TEST_CASE("parallel_for visits every index once") {
  for (unsigned workers : {1u, 2u, 3u, 8u, 64u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, workers);
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  parallel_for(0, [](std::size_t) { FAIL("no work expected"); }, 4);
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(
                      100,
                      [](std::size_t i) {
                        if (i == 57) throw std::runtime_error("boom");
                      },
                      4),
                  std::runtime_error);
}

TEST_CASE("results are bitwise independent of the worker count") {
  const Snapshot one = snapshot();
  for (const char* w : {"2", "5"}) {
    WorkerEnv env(w);
    const Snapshot many = snapshot();
    CHECK(many.c_upper == one.c_upper);
    CHECK(many.c_strong == one.c_strong);
    CHECK(many.riesz == one.riesz);
    CHECK(many.potential == one.potential);
    CHECK(many.smoothness == one.smoothness);
    CHECK(many.seminorm == one.seminorm);
    CHECK((many.applied.array() == one.applied.array()).all());
    CHECK((many.mu.array() == one.mu.array()).all());
  }
}
