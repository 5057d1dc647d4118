#pragma once

// Finite sampled metric measure spaces (Y, d, nu): nodes, a dense distance
// matrix and nonnegative point masses standing in for the measure.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace uareg {

/// Node-count cap for the eagerly materialized distance matrix.
inline constexpr std::size_t kDefaultMaxNodes = 4096;

/// Immutable after construction. Distances are ambient Euclidean.
class SampledMeasureSpace {
 public:
  /// coords is row-major, n rows of `dimension` entries. If total_mass is
  /// given it must agree with the sum of weights to 1e-12 relative; it is then
  /// stored as given (used by builders whose exact mass is known in closed form).
  static SampledMeasureSpace from_points(std::vector<double> coords, std::size_t dimension,
                                         std::vector<double> weights, std::string label,
                                         std::optional<double> total_mass = std::nullopt,
                                         std::size_t max_nodes = kDefaultMaxNodes);

  std::size_t size() const noexcept { return weights_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dimension_, dimension_};
  }
  std::span<const double> coordinates() const noexcept { return coords_; }
  double distance(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const Eigen::MatrixXd& distances() const noexcept { return dist_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }
  double total_mass() const noexcept { return total_mass_; }
  const std::string& label() const noexcept { return label_; }

  /// Largest pairwise distance (0 for a single node).
  double diameter() const noexcept { return diameter_; }
  /// Smallest positive pairwise distance; 0 when no two nodes are distinct.
  double mesh() const noexcept { return mesh_; }

 private:
  SampledMeasureSpace() = default;

  std::size_t dimension_ = 0;
  std::vector<double> coords_;
  Eigen::MatrixXd dist_;
  std::vector<double> weights_;
  double total_mass_ = 0.0;
  double diameter_ = 0.0;
  double mesh_ = 0.0;
  std::string label_;
};

/// n equispaced nodes on a circle, each with mass 2*pi*radius/n.
SampledMeasureSpace build_circle(std::size_t n, double radius = 1.0);

/// Left endpoints of the level-`level` middle-thirds Cantor intervals, mass 2^-level each.
/// Levels above 14 raise ResourceLimit, as does a node count above max_nodes.
SampledMeasureSpace build_cantor(unsigned level, std::size_t max_nodes = kDefaultMaxNodes);

enum class Density { uniform, exp_cusp };

Density parse_density(std::string_view name);
std::string_view density_name(Density d) noexcept;

/// n equispaced nodes on [0,1] with weight w(x_i)/n. exp_cusp is
/// w(x) = exp(-1/x), w(0) = 0: upper 1-Ahlfors regular but not doubling at 0.
SampledMeasureSpace build_weighted_interval(std::size_t n, Density density);
SampledMeasureSpace build_weighted_interval(std::size_t n, std::string_view density_name);

/// Point-cloud text format: "D n" header, then n rows of D coordinates and a
/// weight. Lines starting with '#' are comments.
SampledMeasureSpace read_point_cloud(std::istream& in, std::string label);
SampledMeasureSpace load_point_cloud(const std::string& path);
void write_point_cloud(std::ostream& out, const SampledMeasureSpace& space);

struct SpaceInvariantReport {
  bool zero_diagonal = true;
  bool symmetric = true;
  bool finite = true;
  bool triangle = true;
  bool nonnegative_weights = true;
  bool mass_consistent = true;
  std::size_t triples_checked = 0;

  bool ok() const noexcept {
    return zero_diagonal && symmetric && finite && triangle && nonnegative_weights &&
           mass_consistent;
  }
};

/// Checks the metric and measure invariants. The triangle inequality is scanned
/// exhaustively when n^3 <= triple_budget, otherwise on triple_budget seeded
/// random triples.
SpaceInvariantReport check_invariants(const SampledMeasureSpace& space,
                                      std::size_t triple_budget = 10000,
                                      std::uint64_t seed = 1);

}  // namespace uareg
