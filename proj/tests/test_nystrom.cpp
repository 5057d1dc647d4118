#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "uareg/ahlfors.hpp"
#include "uareg/errors.hpp"
#include "uareg/nystrom.hpp"

using namespace uareg;

namespace {

std::shared_ptr<const SampledMeasureSpace> circle(std::size_t n) {
  return std::make_shared<const SampledMeasureSpace>(build_circle(n));
}

Eigen::VectorXd random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = u(rng);
  return v;
}

double max_offdiag(const Eigen::MatrixXd& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) out = std::max(out, std::abs(m(i, j)));
  return out;
}

}  // namespace

TEST_CASE("assembly basics") {
  const auto sp = circle(4);
  const auto zero = NystromSystem::assemble(sp, Kernel::scaled(Kernel::riesz(0.5), 0.0));
  CHECK(zero.matrix().isZero());
  CHECK(zero.row_sum_norm() == 0.0);

  const auto one = NystromSystem::assemble(sp, Kernel::riesz(0.0));
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(one.matrix()(i, i) == 0.0);
    CHECK(one.matrix().row(i).sum() == doctest::Approx(3 * 2 * std::numbers::pi / 4));
  }
  CHECK(one.row_sum_norm() == doctest::Approx(3 * 2 * std::numbers::pi / 4));
  CHECK(one.scaled(2.0).row_sum_norm() == doctest::Approx(2 * one.row_sum_norm()));
}

TEST_CASE("assembly rejects bad kernels") {
  const auto dup = std::make_shared<const SampledMeasureSpace>(SampledMeasureSpace::from_points(
      {0.0, 0.0, 0.0, 0.0, 1.0, 0.0}, 2, {1.0, 1.0, 1.0}, "dup"));
  try {
    (void)NystromSystem::assemble(dup, Kernel::riesz(0.5));
    FAIL("expected AssemblyError");
  } catch (const AssemblyError& e) {
    CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
  }
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Ones(4, 4);
  CHECK_THROWS_AS(NystromSystem::assemble(circle(4), Kernel::tabulated(c)), InvalidArgument);
}

TEST_CASE("normalization") {
  const auto sys = NystromSystem::assemble(circle(64), Kernel::riesz(0.5));
  const double lambda = normalize_to(sys, 0.5);
  CHECK(lambda * sys.row_sum_norm() == doctest::Approx(0.5).epsilon(1e-14));
  const auto scaled = sys.scaled(lambda);
  CHECK(scaled.row_sum_norm() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(normalize_to(scaled, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(normalize_to(sys, 1.5), InvalidArgument);
  CHECK_THROWS_AS(normalize_to(sys, 0.0), InvalidArgument);
  CHECK_THROWS_AS(normalize_to(sys.scaled(0.0), 0.5), InvalidArgument);
}

TEST_CASE("apply against the Riesz integral") {
  const auto sp = circle(128);
  const auto sys = NystromSystem::assemble(sp, Kernel::riesz(0.5));
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(128);
  const Eigen::VectorXd a1 = apply(sys, ones);
  for (std::size_t i = 0; i < 128; ++i)
    CHECK(std::abs(a1(static_cast<Eigen::Index>(i)) - riesz_integral(*sp, i, 0.5)) <= 1e-12);

  const auto f = random_vector(128, 3);
  const auto g = random_vector(128, 4);
  const Eigen::VectorXd lin = apply(sys, 2.0 * f - 3.0 * g);
  const Eigen::VectorXd sep = 2.0 * apply(sys, f) - 3.0 * apply(sys, g);
  CHECK((lin - sep).lpNorm<Eigen::Infinity>() <= 1e-9);
  CHECK((sys.matrix() * f - apply(sys, f)).lpNorm<Eigen::Infinity>() <= 1e-12);
  CHECK(apply(sys, f).lpNorm<Eigen::Infinity>() <=
        sys.row_sum_norm() * f.lpNorm<Eigen::Infinity>() * (1 + 1e-12));
}

TEST_CASE("numeric composition") {
  const auto sp = circle(32);
  const auto k1 = NystromSystem::assemble(sp, Kernel::riesz(0.5));
  const auto zero = NystromSystem::assemble(sp, Kernel::scaled(Kernel::riesz(0.5), 0.0));
  CHECK(tabulate(compose_numeric(k1, zero), *sp).isZero());

  const auto ones = NystromSystem::assemble(sp, Kernel::riesz(0.0));
  const auto c = tabulate(compose_numeric(ones, ones), *sp);
  for (Eigen::Index i = 0; i < 32; ++i)
    for (Eigen::Index j = 0; j < 32; ++j)
      if (i != j)
        CHECK(c(i, j) == doctest::Approx(sp->total_mass() - sp->weight(static_cast<std::size_t>(i)) -
                                         sp->weight(static_cast<std::size_t>(j))));

  const auto k2 = NystromSystem::assemble(sp, Kernel::riesz(0.3));
  const auto c12 = tabulate(compose_numeric(k1, k2), *sp);
  const Eigen::MatrixXd direct = k1.matrix() * k2.kernel_table();
  for (Eigen::Index i = 0; i < 32; ++i)
    for (Eigen::Index j = 0; j < 32; ++j)
      if (i != j) CHECK(std::abs(c12(i, j) - direct(i, j)) <= 1e-12 * (1 + std::abs(direct(i, j))));

  const auto other = NystromSystem::assemble(circle(16), Kernel::riesz(0.5));
  CHECK_THROWS_AS(compose_numeric(k1, other), InvalidArgument);
}

TEST_CASE("iterated kernels") {
  const auto sp = circle(64);
  const auto sys = NystromSystem::assemble(sp, Kernel::riesz(0.6));
  const auto t1 = tabulate(iterate_kernel(sys, 1), *sp);
  CHECK((t1 - sys.kernel_table()).isZero());
  CHECK_THROWS_AS(iterate_kernel(sys, 0), InvalidArgument);
}

TEST_CASE("third iterate of a 0.6 kernel stays bounded near the diagonal") {
  // smoothing order for s = 0.6 on a curve is 3
  double prev = 0.0;
  for (std::size_t n : {256u, 512u}) {
    const auto sp = circle(n);
    const auto sys = NystromSystem::assemble(sp, Kernel::riesz(0.6));
    const double m = max_offdiag(tabulate(iterate_kernel(sys, 3), *sp));
    if (prev > 0) CHECK(mesh_stable(prev, m, 1.25));
    prev = m;
  }
}

TEST_CASE("second iterate of a 0.6 kernel has potential exponent 0.2") {
  double prev = 0.0;
  for (std::size_t n : {256u, 512u}) {
    const auto sp = circle(n);
    const auto sys = NystromSystem::assemble(sp, Kernel::riesz(0.6));
    const double norm = potential_norm(iterate_kernel(sys, 2), *sp, 0.2);
    if (prev > 0) CHECK(mesh_stable(prev, norm, 1.25));
    prev = norm;
  }
}

TEST_CASE("direct and Neumann solves") {
  const auto sp = circle(200);
  const auto base = NystromSystem::assemble(sp, Kernel::riesz(0.5));
  const auto sys = base.scaled(normalize_to(base, 0.5));

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(200);
  CHECK(solve_direct(sys, zero).mu.isZero());

  const auto g = random_vector(200, 11);
  const auto d = solve_direct(sys, g);
  CHECK(d.residual_inf <= 1e-10 * (1 + g.lpNorm<Eigen::Infinity>()));
  CHECK(residual_inf(sys, d.mu, g) == doctest::Approx(d.residual_inf));
  REQUIRE(d.condition_estimate);
  CHECK(*d.condition_estimate < 10);

  const auto nm = solve_neumann(sys, g);
  REQUIRE(nm.neumann_terms);
  // 0.5^45 < 1e-13
  CHECK(*nm.neumann_terms <= 45);
  CHECK((nm.mu - d.mu).lpNorm<Eigen::Infinity>() <= 1e-10);

  const auto kzero = NystromSystem::assemble(sp, Kernel::scaled(Kernel::riesz(0.5), 0.0));
  const auto trivial = solve_neumann(kzero, g);
  CHECK(*trivial.neumann_terms == 1);
  CHECK((trivial.mu - g).isZero());
  CHECK((solve_direct(kzero, g).mu - g).lpNorm<Eigen::Infinity>() <= 1e-15);

  CHECK_THROWS_AS(solve_neumann(base, g), SolveError);
  CHECK_THROWS_AS(solve_neumann(sys, g, 1e-12, 3), SolveError);
}

TEST_CASE("ill-conditioned systems are refused") {
  // I - A singular: two nodes with A = [[0,1],[1,0]]
  const auto sp = std::make_shared<const SampledMeasureSpace>(
      SampledMeasureSpace::from_points({0.0, 1.0}, 1, {1.0, 1.0}, "pair"));
  const auto sys = NystromSystem::assemble(sp, Kernel::riesz(0.0));
  CHECK_THROWS_AS(solve_direct(sys, Eigen::VectorXd::Ones(2)), SolveError);
}

TEST_CASE("bootstrap identity") {
  const auto sp = circle(200);
  const auto base = NystromSystem::assemble(sp, Kernel::riesz(0.5));
  const auto sys = base.scaled(normalize_to(base, 0.5));
  const auto g = random_vector(200, 5);
  const auto mu = solve_direct(sys, g).mu;
  for (int r = 1; r <= 10; ++r) {
    const auto b = verify_bootstrap(sys, mu, g, r);
    CHECK(b.within_budget);
    CHECK(b.budget == doctest::Approx(r * 200 * 1e-12 * b.scale));
  }
  CHECK_THROWS_AS(verify_bootstrap(sys, mu, g, 0), InvalidArgument);
  Eigen::VectorXd wrong = mu;
  wrong(0) += 1e-3;
  CHECK_FALSE(verify_bootstrap(sys, wrong, g, 2).within_budget);
}
