#pragma once

// Moduli of continuity: powers r^b, the log-power omega_theta and pointwise
// maxima of these, with the regularity moduli predicted for solutions of
// second-kind equations with K_{s1,s2,s3} kernels.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace uareg {

/// omega_theta(r) = r^theta |ln r| on (0, r_theta], constant beyond
/// r_theta = e^{-1/theta}, 0 at 0. Requires theta in (0, 1] and r >= 0.
double omega_theta(double theta, double r);

class Modulus {
 public:
  struct Power {
    double exponent;
  };
  struct LogPower {
    double theta;
  };
  struct MaxOf {
    std::vector<Modulus> parts;
  };
  using Kind = std::variant<Power, LogPower, MaxOf>;

  static Modulus power(double exponent);
  static Modulus log_power(double theta);
  static Modulus max_of(std::vector<Modulus> parts);

  double operator()(double r) const;
  const Kind& kind() const noexcept { return *kind_; }

  /// `r^0.5`, `omega_theta(1){r_theta=..,plateau=..}`, `max(a, b)`.
  std::string to_string() const;

  /// Largest power exponent anywhere in the expression (0 if none).
  double max_power_exponent() const;

 private:
  explicit Modulus(Kind k) : kind_(std::make_shared<const Kind>(std::move(k))) {}
  std::shared_ptr<const Kind> kind_;
};

/// Inverse of to_string(); the {..} plateau annotation is optional on input.
Modulus parse_modulus(std::string_view text);

struct ModulusCheck {
  /// omega(0) = 0 and omega(r) -> 0 as r -> 0+ (read off the expression)
  bool zero_at_origin = false;
  bool positive = false;
  bool nondecreasing = false;
  /// sup over the (a, t) grid of omega(a t) / (a omega(t))
  double sup_ratio = 0.0;
  /// per a on the log grid: sup over t of the same ratio
  std::vector<std::pair<double, double>> ratio_by_a;
  /// the ratio stays bounded: sup at a_max is within 2x of sup at sqrt(a_max)
  bool bounded_ratio = false;
  bool passed = false;
};

/// Log grid for t in [1e-6, t_max] with `points` entries.
std::vector<double> modulus_t_grid(double t_max = 10.0, int points = 121);

/// Checks omega(0) = 0, positivity and monotonicity on t_grid, and the
/// growth condition sup omega(a t)/(a omega(t)) < inf over a in [1, 1e4].
ModulusCheck check_modulus_conditions(const Modulus& modulus, std::span<const double> t_grid);

/// Modulus for solutions when K in K_{s1,s2,s3}:
///   s2 < u: r^{min(u - s1, s3)}
///   s2 = u: max(r^{u - s1}, omega_{s3})          (needs strong regularity)
///   s2 > u: r^{min(u - s1, s3 + u - s2)}          (needs s2 < u + s3)
/// with s1 in [max(0, u - 1), u), s3 in (0, 1], s2 >= 0.
Modulus modulus_varpi(double s1, double s2, double s3, double upsilon, bool strong_regular);

/// Improved modulus when A[K,1] is already omega-Hoelder, branches on s2 - beta:
///   < u: r^{min(u - s1 + beta, s3)}
///   = u: max(r^{u - s1 + beta}, omega_{s3})      (needs strong regularity)
///   > u: r^{min(u - s1 + beta, s3 + u - (s2 - beta))}
/// with s1 in [0, u), beta in (0, 1], s2 >= beta, s3 in (0, 1].
Modulus modulus_omega(double s1, double s2, double s3, double beta, double upsilon,
                      bool strong_regular);

}  // namespace uareg
