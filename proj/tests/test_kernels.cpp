#include <doctest.h>

#include <cmath>
#include <complex>
#include <fstream>

#include "uareg/ahlfors.hpp"
#include "uareg/errors.hpp"
#include "uareg/kernels.hpp"
#include "uareg/sampled_space.hpp"

using namespace uareg;

namespace {

SampledMeasureSpace line(std::vector<double> xs) {
  std::vector<double> w(xs.size(), 1.0);
  return SampledMeasureSpace::from_points(std::move(xs), 1, std::move(w), "line");
}

}  // namespace

TEST_CASE("built-in kernel values") {
  const auto s = line({0.0, 2.0, 4.0});
  CHECK(eval_real(Kernel::riesz(0.0), s, 0, 1) == 1.0);
  CHECK(eval_real(Kernel::riesz(1.0), s, 0, 1) == 0.5);
  CHECK(eval_real(Kernel::scaled(Kernel::riesz(0.5), 2.0), s, 0, 2) == doctest::Approx(1.0));
  CHECK(eval_real(Kernel::log_riesz(1.0), s, 0, 1) == doctest::Approx(0.5 * (1 + std::log(2.0))));
  CHECK_THROWS_AS(eval(Kernel::riesz(0.5), s, 1, 1), DiagonalAccess);
}

TEST_CASE("kernel specs parse and print") {
  CHECK(parse_kernel_spec("riesz:0.5").describe() == "riesz:0.5");
  CHECK(parse_kernel_spec("logriesz:1").describe() == "logriesz:1");
  CHECK(parse_kernel_spec("scale:0.3:riesz:0.5").describe() == "scale:0.3:riesz:0.5");
  CHECK_THROWS_AS(parse_kernel_spec("gauss:1"), ParseError);
  CHECK_THROWS_AS(parse_kernel_spec("riesz:abc"), ParseError);
  CHECK_THROWS_AS(parse_kernel_spec("scale:2"), ParseError);
}

TEST_CASE("tabulated kernels from files") {
  const std::string path = "kernel_table_test.txt";
  {
    std::ofstream out(path);
    out << "# 3x3 table\n0 1 2\n3 0 4\n5 6 0\n";
  }
  const Kernel k = parse_kernel_spec("table:" + path);
  const auto s = line({0.0, 1.0, 2.0});
  CHECK(eval_real(k, s, 2, 1) == 6.0);
  CHECK(eval_real(k, s, 0, 2) == 2.0);
  CHECK_THROWS_AS(eval(k, s, 0, 0), DiagonalAccess);
  CHECK_THROWS_AS(eval(k, line({0.0, 1.0}), 0, 1), InvalidArgument);
  {
    std::ofstream out(path);
    out << "0 1 2\n3 0\n";
  }
  CHECK_THROWS_AS(load_kernel_table(path), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("tables bound to a space label") {
  const auto s = build_circle(4);
  const Kernel k = Kernel::tabulated(Eigen::MatrixXd(Eigen::MatrixXd::Ones(4, 4)), s.label());
  CHECK(eval_real(k, s, 0, 1) == 1.0);
  const auto other = build_circle(4, 2.0);
  CHECK_THROWS_AS(eval(k, other, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(Kernel::tabulated(Eigen::MatrixXd(Eigen::MatrixXd::Ones(3, 4))), InvalidArgument);
}

TEST_CASE("complex kernels use the modulus") {
  const auto s = line({0.0, 1.0, 3.0});
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 1) = {3.0, 4.0};
  m(1, 0) = {0.0, 1.0};
  m(0, 2) = m(2, 0) = m(1, 2) = m(2, 1) = {1.0, 0.0};
  const Kernel k = Kernel::tabulated(m);
  CHECK(k.is_complex());
  CHECK(eval(k, s, 0, 1) == std::complex<double>(3.0, 4.0));
  CHECK(potential_norm(k, s, 0.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(eval_real(k, s, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(tabulate(k, s), InvalidArgument);
  CHECK(tabulate_complex(k, s)(0, 0) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("potential norm") {
  const auto c = build_circle(64, 0.4);
  for (double s : {0.0, 0.3, 0.9}) CHECK(potential_norm(Kernel::riesz(s), c, s) == doctest::Approx(1.0).epsilon(1e-14));
  // diameter 0.8 <= 1: a larger measuring exponent can only shrink the norm
  CHECK(potential_norm(Kernel::riesz(0.3), c, 0.6) <= 1.0);
  CHECK(potential_norm(Kernel::scaled(Kernel::riesz(0.0), 0.0), c, 0.5) == 0.0);
  for (double lambda : {0.1, 3.0, 7.25}) {
    const Kernel base = Kernel::log_riesz(0.5);
    CHECK(potential_norm(Kernel::scaled(base, lambda), c, 0.6) == lambda * potential_norm(base, c, 0.6));
  }
}

TEST_CASE("log riesz potential norm is mesh-stable") {
  const double a = potential_norm(Kernel::log_riesz(0.5), build_circle(128), 0.6);
  const double b = potential_norm(Kernel::log_riesz(0.5), build_circle(512), 0.6);
  CHECK(std::isfinite(a));
  CHECK(mesh_stable(a, b));
}

TEST_CASE("riesz tabulation is symmetric with a zero diagonal") {
  const auto c = build_cantor(5);
  const Eigen::MatrixXd t = tabulate(Kernel::riesz(0.4), c);
  CHECK(t == t.transpose());
  CHECK(t.diagonal().isZero(0.0));
}

TEST_CASE("smoothness seminorm") {
  const auto c = build_circle(64);
  const auto constant = smoothness_seminorm(Kernel::riesz(0.0), c, 1.0, 1.0);
  CHECK(constant.value == 0.0);
  CHECK(constant.admissible_triples > 0);

  const auto tiny = line({0.0, 1.0});
  const auto none = smoothness_seminorm(Kernel::riesz(0.5), tiny, 1.0, 1.0);
  CHECK(none.no_admissible_triples);
  CHECK(none.admissible_triples == 0);
  CHECK(none.value == 0.0);
  CHECK_THROWS_AS(smoothness_seminorm(Kernel::riesz(0.5), c, 1.0, 0.0), InvalidArgument);

  const double lambda = 2.5;
  CHECK(smoothness_seminorm(Kernel::scaled(Kernel::riesz(0.5), lambda), c, 1.5, 1.0).value ==
        lambda * smoothness_seminorm(Kernel::riesz(0.5), c, 1.5, 1.0).value);
}

TEST_CASE("riesz kernels are standard kernels on the circle") {
  for (double s : {0.3, 0.5}) {
    const double a = smoothness_seminorm(Kernel::riesz(s), build_circle(128), s + 1, 1.0).value;
    const double b = smoothness_seminorm(Kernel::riesz(s), build_circle(256), s + 1, 1.0).value;
    CHECK(a > 0.0);
    CHECK(mesh_stable(a, b));
  }
}

TEST_CASE("a jump in the first variable shows in the seminorm") {
  const auto c = build_circle(64);
  Eigen::MatrixXd m = tabulate(Kernel::riesz(0.0), c);
  for (Eigen::Index i = 0; i < 64; ++i)
    for (Eigen::Index j = 0; j < 64; ++j)
      if (i != j && c.point(static_cast<std::size_t>(i))[1] < 0.0) m(i, j) = -1.0;
  const Kernel k = Kernel::tabulated(m, c.label());
  const auto r = class_membership_report(k, c, 0.0, 1.0, 1.0);
  CHECK(r.potential_norm == 1.0);
  REQUIRE(r.smoothness_seminorm.has_value());
  CHECK(*r.smoothness_seminorm > 10.0 * r.potential_norm);
}

TEST_CASE("subsampling beyond the full-scan cap is seeded") {
  const auto c = build_circle(80);
  SeminormOptions o;
  o.max_full_nodes = 20;
  o.seed = 11;
  const auto a = smoothness_seminorm(Kernel::riesz(0.5), c, 1.5, 1.0, o);
  const auto b = smoothness_seminorm(Kernel::riesz(0.5), c, 1.5, 1.0, o);
  CHECK(a.subsampled);
  CHECK(a.value == b.value);
  CHECK(a.admissible_triples == b.admissible_triples);
  CHECK(a.value <= smoothness_seminorm(Kernel::riesz(0.5), c, 1.5, 1.0).value);
}

TEST_CASE("class membership report") {
  const auto c = build_circle(128);
  for (double s : {0.2, 0.5}) {
    const auto r = class_membership_report(Kernel::riesz(s), c, s, s + 1, 1.0);
    CHECK(r.potential_norm == doctest::Approx(1.0));
    CHECK(r.containment_holds);
    CHECK(r.potential_norm <= r.class_norm());
  }
  const auto zero = class_membership_report(Kernel::scaled(Kernel::riesz(0.5), 0.0), c, 0.5, 1.5, 1.0);
  CHECK(zero.potential_norm == 0.0);
  CHECK(zero.smoothness_seminorm.value_or(-1) == 0.0);

  // boundary double-layer shape on a curve: class (1 - alpha, 2 - alpha, 1) with alpha = 0.5
  const double a = class_membership_report(Kernel::riesz(0.5), build_circle(128), 0.5, 1.5, 1.0).class_norm();
  const double b = class_membership_report(Kernel::riesz(0.5), build_circle(256), 0.5, 1.5, 1.0).class_norm();
  CHECK(mesh_stable(a, b));
}
