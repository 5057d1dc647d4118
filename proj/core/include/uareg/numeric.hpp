#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <span>
#include <string>

namespace uareg {

/// Neumaier-compensated accumulator. The result depends only on the order
/// of add() calls, never on thread scheduling.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// Exponent comparisons decide which branch of a case split fires. Sums such
/// as 0.4 + 0.6 must land on the equality branch, so exponents closer than
/// this (relative to max(1, |reference|)) compare equal.
inline constexpr double kExponentTolerance = 1e-12;

/// Three-way comparison of an exponent expression against a reference value.
inline int compare_exponent(double value, double reference) noexcept {
  const double tol = kExponentTolerance * std::max(1.0, std::abs(reference));
  if (value < reference - tol) return -1;
  if (value > reference + tol) return 1;
  return 0;
}

inline double max_abs(std::span<const double> xs) noexcept {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::abs(x));
  return m;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace uareg
