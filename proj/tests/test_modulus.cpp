#include <doctest.h>

#include <cmath>

#include "uareg/errors.hpp"
#include "uareg/modulus.hpp"

using namespace uareg;

TEST_CASE("log-power modulus values") {
  const double e = std::exp(1.0);
  CHECK(omega_theta(1.0, 1.0 / e) == doctest::Approx(1.0 / e).epsilon(1e-15));
  CHECK(omega_theta(1.0, 0.9) == doctest::Approx(1.0 / e).epsilon(1e-15));
  CHECK(omega_theta(0.5, std::exp(-2.0)) == doctest::Approx(2.0 / e).epsilon(1e-15));
  CHECK(omega_theta(0.5, 0.0) == 0.0);
  CHECK(omega_theta(0.3, 0.001) == doctest::Approx(std::pow(0.001, 0.3) * std::log(1000.0)));
  CHECK_THROWS_AS(omega_theta(0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(omega_theta(1.5, 0.5), InvalidArgument);
  CHECK_THROWS_AS(omega_theta(0.5, -1.0), InvalidArgument);
}

TEST_CASE("powers up to one and log-powers satisfy the modulus conditions") {
  const auto grid = modulus_t_grid();
  for (double b : {0.1, 0.5, 0.9, 1.0}) {
    const auto c = check_modulus_conditions(Modulus::power(b), grid);
    CHECK(c.passed);
    CHECK(c.sup_ratio <= 1.0 + 1e-12);
  }
  for (double t : {0.2, 0.5, 1.0}) {
    const auto c = check_modulus_conditions(Modulus::log_power(t), grid);
    CHECK(c.passed);
    CHECK(std::isfinite(c.sup_ratio));
  }
  CHECK(check_modulus_conditions(Modulus::max_of({Modulus::power(1.0), Modulus::log_power(0.5)}), grid).passed);
}

TEST_CASE("a square power fails with ratio growing like a") {
  const auto c = check_modulus_conditions(Modulus::power(2.0), modulus_t_grid());
  CHECK_FALSE(c.passed);
  CHECK_FALSE(c.bounded_ratio);
  for (const auto& [a, r] : c.ratio_by_a) CHECK(r == doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("degenerate moduli fail") {
  const auto grid = modulus_t_grid();
  CHECK_FALSE(check_modulus_conditions(Modulus::power(0.0), grid).passed);   // 1 at the origin side
  CHECK_FALSE(check_modulus_conditions(Modulus::power(-0.5), grid).passed);  // decreasing
  CHECK_THROWS_AS(check_modulus_conditions(Modulus::power(1.0), std::vector<double>{}), InvalidArgument);
}

TEST_CASE("modulus text round trip") {
  for (const char* text : {"r^0.5", "r^1", "omega_theta(0.5)", "max(r^1, omega_theta(0.25))"}) {
    const Modulus m = parse_modulus(text);
    const Modulus back = parse_modulus(m.to_string());
    for (double r : {1e-5, 0.01, 0.3, 2.0}) CHECK(back(r) == m(r));
  }
  CHECK(parse_modulus("omega_theta(1)").to_string().find("plateau=") != std::string::npos);
  CHECK_THROWS_AS(parse_modulus("r^"), ParseError);
  CHECK_THROWS_AS(parse_modulus("sqrt(r)"), ParseError);
  CHECK_THROWS_AS(parse_modulus("max(r^1"), ParseError);
  CHECK_THROWS_AS(parse_modulus("omega_theta(2)"), InvalidArgument);
}

TEST_CASE("varpi branches") {
  const auto first = modulus_varpi(0.5, 0.8, 1.0, 1.0, false);
  CHECK(first.to_string() == "r^0.5");
  // boundary of a three-dimensional domain, alpha = 0.5
  CHECK(modulus_varpi(1.5, 2.5, 1.0, 2.0, false).to_string() == "r^0.5");
  // alpha = 1 hits the logarithmic branch
  const auto log_branch = modulus_varpi(1.0, 2.0, 1.0, 2.0, true);
  for (double r : {1e-4, 0.1, 0.5})
    CHECK(log_branch(r) == doctest::Approx(std::max(r, omega_theta(1.0, r))));
  CHECK_THROWS_AS(modulus_varpi(1.0, 2.0, 1.0, 2.0, false), InvalidArgument);
  CHECK(modulus_varpi(0.5, 1.5, 1.0, 1.0, false).to_string() == "r^0.5");
  CHECK(modulus_varpi(0.2, 1.7, 1.0, 1.0, false).max_power_exponent() == doctest::Approx(0.3));
}

TEST_CASE("varpi preconditions") {
  CHECK_THROWS_AS(modulus_varpi(0.5, 0.8, 1.0, 2.0, false), InvalidArgument);  // s1 < upsilon - 1
  CHECK_THROWS_AS(modulus_varpi(1.0, 0.8, 1.0, 1.0, false), InvalidArgument);
  CHECK_THROWS_AS(modulus_varpi(0.5, 0.8, 0.0, 1.0, false), InvalidArgument);
  CHECK_THROWS_AS(modulus_varpi(0.5, 0.8, 1.5, 1.0, false), InvalidArgument);
  CHECK_THROWS_AS(modulus_varpi(0.5, 2.0, 1.0, 1.0, false), InvalidArgument);  // s2 >= upsilon + s3
  CHECK_THROWS_AS(modulus_varpi(0.5, -0.1, 1.0, 1.0, false), InvalidArgument);
}

TEST_CASE("omega branches") {
  CHECK(modulus_omega(0.5, 1.0, 1.0, 0.5, 1.0, false).to_string() == "r^1");
  const auto eq = modulus_omega(0.5, 1.5, 0.5, 0.5, 1.0, true);
  for (double r : {1e-4, 0.05, 0.5})
    CHECK(eq(r) == doctest::Approx(std::max(r, omega_theta(0.5, r))));
  CHECK(modulus_omega(0.2, 1.7, 1.0, 0.2, 1.0, false).max_power_exponent() == doctest::Approx(0.5));
  CHECK_THROWS_AS(modulus_omega(0.5, 1.5, 0.5, 0.5, 1.0, false), InvalidArgument);
  CHECK_THROWS_AS(modulus_omega(0.5, 0.3, 1.0, 0.5, 1.0, false), InvalidArgument);  // s2 < beta
  CHECK_THROWS_AS(modulus_omega(0.5, 1.0, 1.0, 0.0, 1.0, false), InvalidArgument);
  CHECK_THROWS_AS(modulus_omega(0.1, 3.0, 0.5, 0.5, 1.0, false), InvalidArgument);
}

TEST_CASE("improved modulus is never weaker than varpi on the first branch") {
  for (double s1 : {0.1, 0.4, 0.8})
    for (double s3 : {0.3, 0.7, 1.0})
      for (double beta : {0.2, 0.5, 1.0}) {
        const double s2 = 0.5 + beta;  // s2 - beta stays below upsilon = 1
        const auto v = modulus_varpi(s1, 0.5, s3, 1.0, false);
        const auto w = modulus_omega(s1, s2, s3, beta, 1.0, false);
        for (double r : {1e-4, 0.01, 0.5}) CHECK(w(r) <= v(r) * (1 + 1e-12));
      }
}

TEST_CASE("produced moduli satisfy the modulus conditions") {
  const auto grid = modulus_t_grid();
  for (double s1 : {0.0, 0.3, 0.6, 0.9})
    for (double s2 : {0.2, 0.8, 1.0, 1.2})
      for (double s3 : {0.25, 0.5, 1.0}) {
        try {
          CHECK(check_modulus_conditions(modulus_varpi(s1, s2, s3, 1.0, true), grid).passed);
        } catch (const InvalidArgument&) {
        }
      }
  // first and third omega branches; the equality branch is covered separately
  for (double s1 : {0.3, 0.6, 0.9})
    for (double beta : {0.1, 0.3})
      for (double s2 : {0.5, 1.2})
        try {
          const auto w = modulus_omega(s1, s2, 0.5, beta, 1.0, false);
          if (w.max_power_exponent() <= 1.0) CHECK(check_modulus_conditions(w, grid).passed);
        } catch (const InvalidArgument&) {
        }
}

TEST_CASE("omega equality branch above exponent one fails the growth condition") {
  // upsilon - s1 + beta > 1 puts r^1.3 inside the max; its ratio grows like a^0.3
  const auto w = modulus_omega(0.2, 1.5, 0.5, 0.5, 1.0, true);
  CHECK(w.max_power_exponent() == doctest::Approx(1.3));
  CHECK_FALSE(check_modulus_conditions(w, modulus_t_grid()).passed);
}
