#include "uareg/modulus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "uareg/errors.hpp"
#include "uareg/numeric.hpp"

namespace uareg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_theta(double theta) {
  if (!(theta > 0.0) || theta > 1.0) throw InvalidArgument("theta must lie in (0, 1]");
}

class ModulusParser {
 public:
  explicit ModulusParser(std::string_view text) : text_(text) {}

  Modulus parse() {
    Modulus m = expression();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return m;
  }

 private:
  Modulus expression() {
    skip_space();
    if (consume("max(")) {
      std::vector<Modulus> parts;
      parts.push_back(expression());
      skip_space();
      while (consume(",")) {
        parts.push_back(expression());
        skip_space();
      }
      if (!consume(")")) fail("expected ')'");
      return Modulus::max_of(std::move(parts));
    }
    if (consume("omega_theta(")) {
      const double theta = number();
      skip_space();
      if (!consume(")")) fail("expected ')'");
      if (consume("{")) {
        const auto close = text_.find('}', pos_);
        if (close == std::string_view::npos) fail("unterminated '{'");
        pos_ = close + 1;
      }
      return Modulus::log_power(theta);
    }
    if (consume("r^")) return Modulus::power(number());
    fail("expected r^b, omega_theta(t) or max(...)");
  }

  double number() {
    skip_space();
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
            text_[end] == 'e' || text_[end] == 'E' || text_[end] == '-' || text_[end] == '+'))
      ++end;
    const std::string tok(text_.substr(pos_, end - pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail("bad number '" + tok + "'");
    }
    if (used != tok.size()) fail("bad number '" + tok + "'");
    pos_ = end;
    return v;
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("modulus '" + std::string(text_) + "': " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

double omega_theta(double theta, double r) {
  check_theta(theta);
  if (!(r >= 0.0)) throw InvalidArgument("omega_theta needs r >= 0");
  if (r == 0.0) return 0.0;
  const double r_theta = std::exp(-1.0 / theta);
  const double x = std::min(r, r_theta);
  return std::pow(x, theta) * std::abs(std::log(x));
}

Modulus Modulus::power(double exponent) {
  if (!std::isfinite(exponent)) throw InvalidArgument("power modulus exponent must be finite");
  return Modulus(Power{exponent});
}

Modulus Modulus::log_power(double theta) {
  check_theta(theta);
  return Modulus(LogPower{theta});
}

Modulus Modulus::max_of(std::vector<Modulus> parts) {
  if (parts.empty()) throw InvalidArgument("max_of needs at least one modulus");
  return Modulus(MaxOf{std::move(parts)});
}

double Modulus::operator()(double r) const {
  return std::visit(Overloaded{
                        [r](const Power& p) { return r == 0.0 ? 0.0 : std::pow(r, p.exponent); },
                        [r](const LogPower& l) { return omega_theta(l.theta, r); },
                        [r](const MaxOf& m) {
                          double v = m.parts.front()(r);
                          for (std::size_t k = 1; k < m.parts.size(); ++k)
                            v = std::max(v, m.parts[k](r));
                          return v;
                        },
                    },
                    *kind_);
}

std::string Modulus::to_string() const {
  std::ostringstream out;
  out.precision(10);
  std::visit(Overloaded{
                 [&](const Power& p) { out << "r^" << p.exponent; },
                 [&](const LogPower& l) {
                   const double r_theta = std::exp(-1.0 / l.theta);
                   out << "omega_theta(" << l.theta << "){r_theta=" << r_theta
                       << ",plateau=" << omega_theta(l.theta, r_theta) << '}';
                 },
                 [&](const MaxOf& m) {
                   out << "max(";
                   for (std::size_t k = 0; k < m.parts.size(); ++k)
                     out << (k ? ", " : "") << m.parts[k].to_string();
                   out << ')';
                 },
             },
             *kind_);
  return out.str();
}

double Modulus::max_power_exponent() const {
  return std::visit(Overloaded{
                        [](const Power& p) { return p.exponent; },
                        [](const LogPower&) { return 0.0; },
                        [](const MaxOf& m) {
                          double e = 0.0;
                          for (const auto& part : m.parts) e = std::max(e, part.max_power_exponent());
                          return e;
                        },
                    },
                    *kind_);
}

Modulus parse_modulus(std::string_view text) { return ModulusParser(text).parse(); }

std::vector<double> modulus_t_grid(double t_max, int points) {
  if (!(t_max > 1e-6) || points < 2) throw InvalidArgument("modulus_t_grid needs t_max > 1e-6");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double lo = std::log(1e-6);
  const double hi = std::log(t_max);
  for (int k = 0; k < points; ++k)
    g[static_cast<std::size_t>(k)] = std::exp(lo + (hi - lo) * k / (points - 1));
  return g;
}

namespace {

bool vanishes_at_origin(const Modulus& m) {
  return std::visit(Overloaded{
                        [](const Modulus::Power& p) { return p.exponent > 0.0; },
                        [](const Modulus::LogPower&) { return true; },
                        [](const Modulus::MaxOf& x) {
                          return std::all_of(x.parts.begin(), x.parts.end(),
                                             [](const Modulus& q) { return vanishes_at_origin(q); });
                        },
                    },
                    m.kind());
}

}  // namespace

ModulusCheck check_modulus_conditions(const Modulus& modulus, std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidArgument("modulus check needs a nonempty grid");
  std::vector<double> ts(t_grid.begin(), t_grid.end());
  std::sort(ts.begin(), ts.end());

  ModulusCheck c;
  c.zero_at_origin = modulus(0.0) == 0.0 && vanishes_at_origin(modulus);
  c.positive = std::all_of(ts.begin(), ts.end(), [&](double t) { return t > 0.0 && modulus(t) > 0.0; });
  c.nondecreasing = true;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double prev = modulus(ts[k - 1]);
    // monotonicity up to rounding in pow/log near the plateau corner
    if (modulus(ts[k]) < prev * (1.0 - 1e-12)) c.nondecreasing = false;
  }

  constexpr int kAPoints = 41;  // a = 10^{k/10}, k = 0..40
  for (int k = 0; k < kAPoints; ++k) {
    const double a = std::pow(10.0, k / 10.0);
    double sup = 0.0;
    for (double t : ts) {
      const double denom = a * modulus(t);
      if (denom > 0.0) sup = std::max(sup, modulus(a * t) / denom);
    }
    c.ratio_by_a.emplace_back(a, sup);
    c.sup_ratio = std::max(c.sup_ratio, sup);
  }
  const double at_mid = c.ratio_by_a[kAPoints / 2].second;
  const double at_end = c.ratio_by_a.back().second;
  c.bounded_ratio = std::isfinite(c.sup_ratio) && at_end <= 2.0 * at_mid;
  c.passed = c.zero_at_origin && c.positive && c.nondecreasing && c.bounded_ratio;
  return c;
}

Modulus modulus_varpi(double s1, double s2, double s3, double upsilon, bool strong_regular) {
  if (!(upsilon > 0.0) || !std::isfinite(upsilon)) throw InvalidArgument("upsilon must be positive");
  if (!(s1 >= 0.0) || compare_exponent(s1, upsilon - 1.0) < 0 || compare_exponent(s1, upsilon) >= 0)
    throw InvalidArgument("s1 must lie in [max(0, upsilon - 1), upsilon)");
  if (!(s3 > 0.0) || s3 > 1.0) throw InvalidArgument("s3 must lie in (0, 1]");
  if (!(s2 >= 0.0) || !std::isfinite(s2)) throw InvalidArgument("s2 must be >= 0");
  const int branch = compare_exponent(s2, upsilon);
  if (branch == 0 && !strong_regular)
    throw InvalidArgument("s2 = upsilon requires strong upper Ahlfors regularity");
  if (branch > 0 && compare_exponent(s2, upsilon + s3) >= 0)
    throw InvalidArgument("s2 > upsilon requires s2 < upsilon + s3");
  if (branch < 0) return Modulus::power(std::min(upsilon - s1, s3));
  if (branch == 0)
    return Modulus::max_of({Modulus::power(upsilon - s1), Modulus::log_power(s3)});
  return Modulus::power(std::min(upsilon - s1, s3 + upsilon - s2));
}

Modulus modulus_omega(double s1, double s2, double s3, double beta, double upsilon,
                      bool strong_regular) {
  if (!(upsilon > 0.0) || !std::isfinite(upsilon)) throw InvalidArgument("upsilon must be positive");
  if (!(s1 >= 0.0) || compare_exponent(s1, upsilon) >= 0)
    throw InvalidArgument("s1 must lie in [0, upsilon)");
  if (!(beta > 0.0) || beta > 1.0) throw InvalidArgument("beta must lie in (0, 1]");
  if (!(s2 >= beta) || !std::isfinite(s2)) throw InvalidArgument("s2 must be >= beta");
  if (!(s3 > 0.0) || s3 > 1.0) throw InvalidArgument("s3 must lie in (0, 1]");
  const double shifted = s2 - beta;
  const int branch = compare_exponent(shifted, upsilon);
  if (branch == 0 && !strong_regular)
    throw InvalidArgument("s2 - beta = upsilon requires strong upper Ahlfors regularity");
  if (branch > 0 && !(compare_exponent(s3 + upsilon - shifted, 0.0) > 0))
    throw InvalidArgument("s2 - beta > upsilon requires s3 + upsilon - (s2 - beta) > 0");
  const double lead = upsilon - s1 + beta;
  if (branch < 0) return Modulus::power(std::min(lead, s3));
  if (branch == 0) return Modulus::max_of({Modulus::power(lead), Modulus::log_power(s3)});
  return Modulus::power(std::min(lead, s3 + upsilon - shifted));
}

}  // namespace uareg
