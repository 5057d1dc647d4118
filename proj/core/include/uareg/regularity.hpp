#pragma once

// Empirical Hoelder/modulus seminorms on sampled spaces and multi-mesh
// regularity experiments for solutions of mu - A[K, mu] = g.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "uareg/kernels.hpp"
#include "uareg/modulus.hpp"
#include "uareg/sampled_space.hpp"

namespace uareg {

/// Built-in data g:
///   const:c        g = c
///   coord:k        g = k-th ambient coordinate
///   distpow:t[@i]  g = d(x, x_i)^t, t in (0, 1], i defaults to 0
///   step:k[:c]     g = 1 where coordinate k >= c (default 0), else 0
struct Datum {
  enum class Kind { constant, coordinate, distance_power, step };
  Kind kind = Kind::constant;
  double value = 0.0;  // constant, exponent or threshold
  std::size_t index = 0;

  std::string to_string() const;
  bool continuous() const noexcept { return kind != Kind::step; }
};

Datum parse_datum(std::string_view text);
Eigen::VectorXd evaluate_datum(const Datum& datum, const SampledMeasureSpace& space);

struct ScaleBin {
  double lo = 0.0;
  double hi = 0.0;
  double sup = 0.0;
  std::size_t pairs = 0;
};

struct HolderEstimate {
  std::string modulus;
  double min_dist = 0.0;
  double seminorm = 0.0;
  std::pair<std::size_t, std::size_t> argmax{0, 0};
  std::size_t admitted_pairs = 0;
  std::vector<ScaleBin> by_scale;
};

inline constexpr int kScaleBins = 16;

/// sup over pairs with d(x, y) >= min_dist (and d > 0) of |f(x) - f(y)| / omega(d).
/// min_dist defaults to twice the mesh. Throws InvalidArgument when no pair is
/// admitted or the modulus fails check_modulus_conditions.
HolderEstimate holder_seminorm(const Eigen::VectorXd& f, const SampledMeasureSpace& space,
                               const Modulus& modulus,
                               std::optional<double> min_dist = std::nullopt);

struct RestrictedBoundCheck {
  double a = 0.0;
  double lhs = 0.0;  // restricted sup over d >= a
  double rhs = 0.0;  // 2 max|f| / omega(a)
  double slack = 0.0;
  bool passed = false;
};

/// The restricted seminorm over pairs at distance >= a never exceeds
/// 2 sup|f| / omega(a).
RestrictedBoundCheck check_restricted_bound(const Eigen::VectorXd& f,
                                            const SampledMeasureSpace& space,
                                            const Modulus& modulus, double a);

/// Builds the kernel used on one mesh (tables need the space).
using KernelFactory = std::function<Kernel(const SampledMeasureSpace&)>;
KernelFactory constant_kernel_factory(Kernel kernel);

struct ExperimentSetup {
  std::vector<std::shared_ptr<const SampledMeasureSpace>> meshes;  // coarse to fine, >= 2
  KernelFactory kernel;
  Datum datum;
  /// When set, every mesh uses lambda = target / row_sum_norm on the finest mesh.
  std::optional<double> target_norm = 0.5;
};

struct ContinuityMesh {
  std::string label;
  std::size_t n = 0;
  double mesh = 0.0;
  double solution_jump = 0.0;  // max |mu_i - mu_nn(i)|
  double datum_jump = 0.0;
  double residual_inf = 0.0;
};

struct ContinuityReport {
  double lambda = 1.0;
  double max_jump_ratio = 0.9;
  std::vector<ContinuityMesh> meshes;
  std::vector<double> jump_ratios;        // fine / coarse for mu
  std::vector<double> datum_jump_ratios;  // fine / coarse for g
  bool datum_discontinuous = false;
  bool passed = false;
};

/// Nearest-neighbour jump of mu under refinement; passes when every ratio is
/// at most max_jump_ratio. The datum is flagged discontinuous when its own
/// jumps fail the same test.
ContinuityReport run_continuity_experiment(const ExperimentSetup& setup,
                                           double max_jump_ratio = 0.9);

struct ClassParameters {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 1.0;
  double upsilon = 1.0;
  double theta = 0.5;
  std::optional<double> beta;
  bool strong_regular = false;
};

struct RegularityMesh {
  std::string label;
  std::size_t n = 0;
  double mesh = 0.0;
  double min_dist = 0.0;
  double seminorm = 0.0;
  std::pair<std::size_t, std::size_t> argmax{0, 0};
  double datum_seminorm = 0.0;  // |g| under r^theta
  double solution_sup = 0.0;
  double residual_inf = 0.0;
  double class_norm = 0.0;
  std::optional<double> hypothesis_seminorm;  // |A[K,1]| under omega
};

struct RegularityExperimentReport {
  ClassParameters params;
  std::string class_modulus;  // varpi or omega
  std::string predicted_modulus;
  double lambda = 1.0;
  double growth_limit = 1.25;
  std::vector<RegularityMesh> meshes;
  std::vector<double> growth_ratios;
  std::vector<double> class_norm_ratios;
  std::vector<double> hypothesis_growth;
  bool passed = false;
};

struct HolderExperimentOptions {
  double growth_limit = 1.25;
  /// Kernel class seminorms must stay within this factor between meshes.
  double class_stability_factor = 2.0;
  bool check_class = true;
  SeminormOptions seminorm;
};

/// Predicted modulus max(r^theta, varpi). Throws InvalidArgument for violated
/// exponent preconditions and HypothesisError when the kernel's class seminorms
/// are not mesh-stable.
RegularityExperimentReport run_holder_experiment(const ExperimentSetup& setup,
                                                 const ClassParameters& params,
                                                 const HolderExperimentOptions& options = {});

/// Predicted modulus max(r^theta, omega); params.beta is required. The
/// hypothesis that A[K, 1] is omega-continuous is measured on every mesh and
/// the run is refused with HypothesisError when it is not mesh-stable.
RegularityExperimentReport run_improved_holder_experiment(
    const ExperimentSetup& setup, const ClassParameters& params,
    const HolderExperimentOptions& options = {});

/// fine / coarse with both clamped below at floor; 1 when both are below it.
double growth_ratio(double coarse, double fine, double floor) noexcept;

}  // namespace uareg
