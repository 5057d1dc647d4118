#include "uareg/class_calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "uareg/errors.hpp"
#include "uareg/numeric.hpp"

namespace uareg {

namespace {

std::vector<double> parse_number_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::string buf(text);
  std::size_t start = 0;
  while (true) {
    const auto comma = buf.find(',', start);
    const std::string tok = buf.substr(start, comma == std::string::npos ? std::string::npos
                                                                         : comma - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + tok + "' in " + std::string(what));
    }
    if (used != tok.size() || !std::isfinite(v))
      throw ParseError("bad number '" + tok + "' in " + std::string(what));
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view strip_prefix(std::string_view text, std::string_view prefix) {
  if (text.substr(0, prefix.size()) != prefix)
    throw ParseError("expected '" + std::string(prefix) + "' in '" + std::string(text) + "'");
  return text.substr(prefix.size());
}

bool in_half_open(double v, double upsilon) {
  return v >= 0.0 && compare_exponent(v, upsilon) < 0;
}

}  // namespace

KernelClass parse_class_spec(std::string_view text) {
  const std::string_view body = strip_prefix(text, "class:");
  const auto at = body.find('@');
  if (at == std::string_view::npos) throw ParseError("class spec needs '@upsilon'");
  const auto exps = parse_number_list(body.substr(0, at), "class exponents");
  const auto ups = parse_number_list(body.substr(at + 1), "class upsilon");
  if (exps.size() != 3 || ups.size() != 1)
    throw ParseError("class spec must read class:s1,s2,s3@upsilon");
  KernelClass k;
  k.s1 = exps[0];
  k.s2 = exps[1];
  k.s3 = exps[2];
  k.upsilon = ups[0];
  return k;
}

std::string format_class(const KernelClass& k) {
  std::ostringstream out;
  out.precision(12);
  out << "class:" << k.s1 << ',' << k.s2 << ',' << k.s3 << '@' << k.upsilon;
  if (k.log_flag) out << " [log]";
  if (k.eps_slack) out << " [eps=" << k.epsilon << ']';
  return out.str();
}

Split parse_split(std::string_view text) {
  const auto v = parse_number_list(strip_prefix(text, "split:"), "split");
  if (v.size() != 2) throw ParseError("split spec must read split:s2p,s2pp");
  return {v[0], v[1]};
}

PotentialCompositionResult compose_potential_classes(double t1, double t2, double upsilon) {
  if (!(upsilon > 0.0)) throw InvalidArgument("upsilon must be positive");
  for (double t : {t1, t2})
    if (!(t > 0.0) || compare_exponent(t, upsilon) > 0)
      throw InvalidArgument("potential exponents t_l must lie in (0, upsilon]");
  PotentialCompositionResult r;
  r.cls.upsilon = upsilon;
  r.cls.s2 = 0.0;
  r.cls.s3 = 0.0;
  const int cmp = compare_exponent(t1 + t2, upsilon);
  if (cmp < 0) {
    r.kind = PotentialComposition::potential;
    r.cls.s1 = upsilon - (t1 + t2);
  } else if (cmp == 0) {
    r.kind = PotentialComposition::log_bounded;
    r.cls.s1 = 0.0;
    r.cls.log_flag = true;
  } else {
    r.kind = PotentialComposition::bounded;
    r.cls.s1 = 0.0;
  }
  return r;
}

GeneralComposition compose_general(const KernelClass& first, const Split& split, double t1,
                                   bool strong_regular, double epsilon) {
  const double u = first.upsilon;
  if (!(u > 0.0) || !std::isfinite(u)) throw InvalidArgument("upsilon must be positive");
  if (!in_half_open(first.s1, u)) throw InvalidArgument("s1 must lie in [0, upsilon)");
  if (!in_half_open(t1, u)) throw InvalidArgument("t1 must lie in [0, upsilon)");
  if (!(first.s3 > 0.0) || first.s3 > 1.0) throw InvalidArgument("s3 must lie in (0, 1]");
  if (!in_half_open(split.s2_prime, u)) throw InvalidArgument("s2' must lie in [0, upsilon)");
  if (!(split.s2_second >= 0.0) || compare_exponent(split.s2_second, first.s3) > 0)
    throw InvalidArgument("s2'' must lie in [0, s3]");
  if (compare_exponent(split.s2_prime + split.s2_second, first.s2) != 0)
    throw InvalidArgument("split must satisfy s2' + s2'' = s2");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");

  GeneralComposition g;
  g.sign_first = compare_exponent(first.s1 + t1, u);
  g.sign_second = compare_exponent(split.s2_prime + t1, u);
  if ((g.sign_first == 0 || g.sign_second == 0) && !strong_regular)
    throw InvalidArgument(
        "s1 + t1 = upsilon or s2' + t1 = upsilon requires strong upper Ahlfors regularity");

  g.case_index = 3 * (g.sign_first + 1) + (g.sign_second + 1) + 1;
  g.case_label = "(" + roman_numeral(g.case_index) + ")";

  KernelClass& k = g.cls;
  k.upsilon = u;
  switch (g.sign_first) {
    case -1: k.s1 = 0.0; break;
    case 0:
      k.s1 = epsilon;
      g.eps_in_first = true;
      break;
    default: k.s1 = first.s1 + t1 - u; break;
  }
  const double base_second = std::max(first.s1, t1);
  switch (g.sign_second) {
    case -1: k.s2 = base_second; break;
    case 0:
      k.s2 = std::max(epsilon, base_second);
      g.eps_in_second = true;
      break;
    default: k.s2 = std::max(split.s2_prime + t1 - u, base_second); break;
  }
  k.s3 = std::min({first.s3 - split.s2_second, u - first.s1, u - t1});
  k.eps_slack = g.eps_in_first || g.eps_in_second;
  k.epsilon = k.eps_slack ? epsilon : 0.0;
  return g;
}

std::optional<Split> suggest_split(const KernelClass& first, double t1, bool strong_regular,
                                   int steps) {
  if (steps < 1) throw InvalidArgument("suggest_split needs steps >= 1");
  std::optional<Split> best;
  double best_third = -1.0;
  double best_second = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double second = first.s3 * static_cast<double>(k) / static_cast<double>(steps);
    const Split split{first.s2 - second, second};
    try {
      const GeneralComposition g = compose_general(first, split, t1, strong_regular);
      if (!best || g.cls.s3 > best_third ||
          (g.cls.s3 == best_third && g.cls.s2 < best_second)) {
        best = split;
        best_third = g.cls.s3;
        best_second = g.cls.s2;
      }
    } catch (const InvalidArgument&) {
      // infeasible split
    }
  }
  return best;
}

int smoothing_order(double s, double upsilon) {
  if (!(upsilon > 0.0) || !std::isfinite(upsilon)) throw InvalidArgument("upsilon must be positive");
  if (!(s >= 0.0)) throw InvalidArgument("smoothing_order needs s >= 0");
  if (compare_exponent(s, upsilon) >= 0) throw InvalidArgument("smoothing_order needs s < upsilon");
  if (s == 0.0) return 2;
  const double gap = upsilon - s;
  constexpr int kMaxOrder = 10'000'000;
  int m = 1;
  while (compare_exponent(static_cast<double>(m + 1) * gap, upsilon) < 0) {
    if (++m >= kMaxOrder) throw ResourceLimit("smoothing order exceeds the iteration cap");
  }
  // m is now the largest m >= 1 with m * gap < upsilon
  return compare_exponent(static_cast<double>(m + 1) * gap, upsilon) > 0 ? m + 1 : m + 2;
}

std::string roman_numeral(int k) {
  static constexpr std::array<const char*, 10> kNames = {"",   "i",  "ii",  "iii", "iv",
                                                         "v",  "vi", "vii", "viii", "ix"};
  if (k < 1 || k > 9) throw InvalidArgument("case index must be 1..9");
  return kNames[static_cast<std::size_t>(k)];
}

}  // namespace uareg
