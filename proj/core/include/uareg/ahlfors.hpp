#pragma once

// Ball and annulus masses, upper / strongly upper Ahlfors constant estimates,
// Riesz-type integrals and the integral bounds they imply on a sampled space.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uareg/sampled_space.hpp"

namespace uareg {

/// Default spacing of radius grids: 2^(1/4) between consecutive radii.
inline constexpr double kDefaultGridRatio = 1.189207115002721;  // 2^(1/4)

/// Geometric grid lo, lo*ratio, ... with hi as the last entry.
std::vector<double> geometric_grid(double lo, double hi, double ratio = kDefaultGridRatio);

/// Geometric grid from the mesh scale to the diameter. A space with no two
/// distinct nodes gets [1e-3, 1].
std::vector<double> default_radius_grid(const SampledMeasureSpace& space);

/// Mass of the open ball B(x, r): nodes with d(x, y) < r. Requires r > 0.
double ball_measure(const SampledMeasureSpace& space, std::size_t center, double r);

/// Mass of nodes with r1 <= d(x, y) < r2. Requires 0 <= r1 < r2. With r1 = 0
/// this is the open ball of radius r2 (B(x, 0) is empty).
double annulus_measure(const SampledMeasureSpace& space, std::size_t center, double r1,
                       double r2);

struct WorstPair {
  std::size_t node = 0;
  double radius = 0.0;
  double ratio = 0.0;
};

struct AhlforsReport {
  double upsilon = 0.0;
  double r_cutoff = 0.0;
  double c_upper = 0.0;
  std::optional<double> c_strong;
  std::vector<WorstPair> worst_pairs;  // top 10 by ratio, descending
  /// Largest ratio sits at the smallest grid radius r0 and exceeds 1.5x every
  /// ratio at radii >= max(2, 2^{1/upsilon}) r0: the ratio keeps growing toward 0.
  bool small_scale_blowup = false;
  double ceiling = 0.0;  // +inf when no ceiling was requested
  bool passed = false;
};

struct AhlforsOptions {
  std::optional<double> ceiling;
  std::optional<double> r_cutoff;
  /// Strong estimator only: annuli with r1 > 0 narrower than this are skipped.
  /// Defaults to twice the mesh; below that an annulus catches whole nodes
  /// while its width goes to zero.
  std::optional<double> min_annulus_width;
};

/// c_upper = max over nodes x and grid radii r of nu(B(x,r)) / r^upsilon.
AhlforsReport estimate_upper_ahlfors(const SampledMeasureSpace& space, double upsilon,
                                     std::span<const double> radius_grid,
                                     const AhlforsOptions& options = {});

/// Adds c_strong = max over nodes and grid pairs r1 < r2 (r1 = 0 included) of
/// annulus mass / (r2^upsilon - r1^upsilon). `passed` then refers to c_strong.
AhlforsReport estimate_strong_upper_ahlfors(const SampledMeasureSpace& space, double upsilon,
                                            std::span<const double> radius_grid,
                                            const AhlforsOptions& options = {});

/// Diagnostic only: max over grid radii of nu(B(x,2r)) / nu(B(x,r)) where the
/// denominator is positive; 0 if it never is.
double doubling_ratio(const SampledMeasureSpace& space, std::size_t center,
                      std::span<const double> radius_grid);

/// sum_{j != x} w_j d(x, x_j)^{-s}. The diagonal term is dropped (points carry
/// no mass of their own in the continuum). Coincident distinct nodes give +inf for s > 0.
double riesz_integral(const SampledMeasureSpace& space, std::size_t x, double s);

enum class BoundKind { ball, complement_power, complement_log, whole, composite };
std::string_view bound_kind_name(BoundKind kind) noexcept;

struct ScaleRatio {
  double scale = 0.0;
  double ratio = 0.0;
};

struct RieszBoundReport {
  double s = 0.0;
  BoundKind kind = BoundKind::whole;
  double measured_sup = 0.0;
  std::optional<double> bound_value;
  bool passed = false;
  std::vector<ScaleRatio> ratio_by_scale;
};

/// Checks sup_x riesz_integral(x, s) <= nu(Y) a^{-s} + c_upper * upsilon/(upsilon-s) * a^{upsilon-s}.
/// For s = 0 the bound is nu(Y) itself. Requires 0 <= s < upsilon and 0 < a < r_cutoff
/// (r_cutoff defaults to the diameter).
RieszBoundReport verify_ball_bound(const SampledMeasureSpace& space, double upsilon, double s,
                                   double a, double c_upper,
                                   std::optional<double> r_cutoff = std::nullopt);

/// Normalized localized integrals, kind chosen by s against upsilon:
///   s < upsilon: t^{s-upsilon} * int_{B(x,t)} d^{-s}          (ball)
///   s > upsilon: t^{s-upsilon} * int_{Y \ B(x,t)} d^{-s}      (complement_power)
///   s = upsilon: |ln t|^{-1} * int_{Y \ B(x,t)} d^{-upsilon}  (complement_log, t < 1/e)
/// With c_upper given, the ball kind carries bound 2 * c_upper * upsilon/(upsilon-s).
/// Finiteness is judged by the caller through mesh_stable() across refinements.
RieszBoundReport verify_localized_bounds(const SampledMeasureSpace& space, double upsilon,
                                         double s, std::span<const double> scale_grid,
                                         std::optional<double> c_upper = std::nullopt);

struct NodePair {
  std::size_t x = 0;
  std::size_t z = 0;
};

/// All ordered pairs when count >= n^2, otherwise `count` seeded random pairs.
std::vector<NodePair> sample_pairs(const SampledMeasureSpace& space, std::size_t count,
                                   std::uint64_t seed);

/// Empirical constant of the composite integral
///   I(x,z) = sum_{y not in {x,z}} w_y d(x,y)^{-s1} d(y,z)^{-s2}
/// against the shape 1 + d^{u-s1-s2} (s1+s2 < u), 1 + |log d| (s1+s2 = u) or
/// d^{u-s1-s2} (s1+s2 > u). Pairs with x = z are skipped in the last two cases.
/// The equality case requires strong_regular.
RieszBoundReport composite_integral_check(const SampledMeasureSpace& space, double upsilon,
                                          double s1, double s2, std::span<const NodePair> pairs,
                                          bool strong_regular);

/// sup_x sum_{y in F_x} w_y d(x,y)^{-s} where F_x collects the nodes y != x
/// nearest to x while their mass stays within mass_budget.
double small_set_modulus(const SampledMeasureSpace& space, double s, double mass_budget);

struct ComparabilityReport {
  std::size_t admissible_triples = 0;
  std::size_t violations = 0;
};

/// For triples with d(x', y) >= 2 d(x', x'') > 0, counts failures of
/// d(x',y)/2 <= d(x'',y) <= 2 d(x',y). Exhaustive when n^3 <= triple_budget.
ComparabilityReport check_comparability(const SampledMeasureSpace& space,
                                        std::size_t triple_budget = 1'000'000,
                                        std::uint64_t seed = 1);

/// Two-mesh finiteness proxy: both values finite and within `factor` of each
/// other (two zeros count as stable).
bool mesh_stable(double coarse, double fine, double factor = 2.0) noexcept;

}  // namespace uareg
