#pragma once

// Exponent algebra of kernel classes under composition
//   K3(x, y) = int K1(x, t) K2(t, y) dnu(t)
// and the iteration count after which an iterated weakly singular kernel is bounded.

#include <optional>
#include <string>
#include <string_view>

namespace uareg {

/// Default numeric stand-in for "every eps > 0" exponents.
inline constexpr double kDefaultEpsilon = 1e-3;

/// Exponents (s1, s2, s3) of K_{s1,s2,s3} relative to a dimension upsilon.
/// Only exponents and flags are tracked, never multiplicative constants.
struct KernelClass {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 1.0;
  double upsilon = 1.0;
  /// A (1 + |ln d|) factor rides on the d^{-s1} bound.
  bool log_flag = false;
  /// Some exponent holds for every eps > 0; `epsilon` is the value substituted.
  bool eps_slack = false;
  double epsilon = 0.0;
};

/// "class:s1,s2,s3@upsilon"
KernelClass parse_class_spec(std::string_view text);
std::string format_class(const KernelClass& k);

enum class PotentialComposition {
  potential,    // K3 of potential type upsilon - (t1 + t2)
  log_bounded,  // |K3| <= C (1 + |ln d|)
  bounded,      // K3 extends continuously and boundedly to the diagonal
};

struct PotentialCompositionResult {
  PotentialComposition kind = PotentialComposition::potential;
  KernelClass cls;  // s1 carries the potential exponent; s2, s3 unused (0)
};

/// Composition of K_{u - t1} with K_{u - t2}, inputs given as t_l = u - s_l in (0, u].
PotentialCompositionResult compose_potential_classes(double t1, double t2, double upsilon);

struct Split {
  double s2_prime = 0.0;
  double s2_second = 0.0;
};

/// "split:s2p,s2pp"
Split parse_split(std::string_view text);

struct GeneralComposition {
  KernelClass cls;
  int case_index = 0;  // 1..9
  std::string case_label;  // "(i)" .. "(ix)"
  int sign_first = 0;   // sign of s1 + t1 - upsilon
  int sign_second = 0;  // sign of s2' + t1 - upsilon
  bool eps_in_first = false;
  bool eps_in_second = false;
};

/// Class of the composite of K1 in K_{s1,s2,s3} (with s2 = s2' + s2'') and
/// K2 in K_{t1}. Nine cases keyed by the signs of s1+t1-u and s2'+t1-u.
/// strong_regular must be true whenever either sign is zero.
GeneralComposition compose_general(const KernelClass& first, const Split& split, double t1,
                                   bool strong_regular, double epsilon = kDefaultEpsilon);

/// Grid search over s2'' in [0, s3] (steps + 1 points) for the split giving
/// the largest third exponent; ties prefer the smaller second exponent.
/// Splits that need strong regularity are skipped unless strong_regular.
std::optional<Split> suggest_split(const KernelClass& first, double t1, bool strong_regular,
                                   int steps = 1000);

/// Smallest r from the iteration argument such that K^{(r)} is bounded and
/// continuous for K of potential type s < upsilon.
int smoothing_order(double s, double upsilon);

std::string roman_numeral(int k);

}  // namespace uareg
