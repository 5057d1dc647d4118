#pragma once

// Off-diagonal kernels K(x, y), their potential-type norm and the
// first-variable smoothness seminorm of the K_{s1,s2,s3} classes.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <Eigen/Core>

#include "uareg/sampled_space.hpp"

namespace uareg {

class Kernel {
 public:
  struct Riesz {
    double s;
  };
  struct LogRiesz {
    double s;
  };
  struct Scaled {
    std::shared_ptr<const Kernel> inner;
    double lambda;
  };
  struct Table {
    std::shared_ptr<const Eigen::MatrixXd> values;
    std::string domain;  // empty: any space of matching size
  };
  struct ComplexTable {
    std::shared_ptr<const Eigen::MatrixXcd> values;
    std::string domain;
  };
  using Family = std::variant<Riesz, LogRiesz, Scaled, Table, ComplexTable>;

  /// d^{-s}
  static Kernel riesz(double s);
  /// d^{-s} (1 + |ln d|)
  static Kernel log_riesz(double s);
  static Kernel scaled(Kernel inner, double lambda);
  /// Diagonal entries are ignored. A nonempty domain must equal the label of
  /// the space the kernel is evaluated on.
  static Kernel tabulated(Eigen::MatrixXd values, std::string domain = {});
  static Kernel tabulated(Eigen::MatrixXcd values, std::string domain = {});

  const Family& family() const noexcept { return family_; }
  bool is_complex() const noexcept;
  /// Spec-string form where one exists ("riesz:0.5", "scale:2:riesz:0.5");
  /// tables print as "table[n x n]".
  std::string describe() const;

 private:
  explicit Kernel(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// Parses `riesz:S`, `logriesz:S`, `scale:L:<spec>` and `table:<path>`.
Kernel parse_kernel_spec(std::string_view spec);

/// Square real matrix in the point-cloud numeric format: one row per line,
/// whitespace-separated, '#' comments.
Eigen::MatrixXd load_kernel_table(const std::string& path);

/// K(x_i, x_j). Throws DiagonalAccess for i == j.
std::complex<double> eval(const Kernel& kernel, const SampledMeasureSpace& space, std::size_t i,
                          std::size_t j);
/// Real part of eval(); throws InvalidArgument for complex-valued kernels.
double eval_real(const Kernel& kernel, const SampledMeasureSpace& space, std::size_t i,
                 std::size_t j);

/// Off-diagonal tabulation with an exact zero diagonal.
Eigen::MatrixXd tabulate(const Kernel& kernel, const SampledMeasureSpace& space);
Eigen::MatrixXcd tabulate_complex(const Kernel& kernel, const SampledMeasureSpace& space);

/// max over off-diagonal pairs of |K(x,y)| d(x,y)^s.
double potential_norm(const Kernel& kernel, const SampledMeasureSpace& space, double s);

struct SeminormOptions {
  /// Above this node count the second point x'' is drawn from a seeded
  /// uniform subsample of this size.
  std::size_t max_full_nodes = 512;
  std::uint64_t seed = 0;
};

struct SmoothnessResult {
  double value = 0.0;
  std::size_t admissible_triples = 0;
  bool no_admissible_triples = false;
  bool subsampled = false;
};

/// max over triples (x', x'', y), x' != x'', d(x',y) >= 2 d(x',x''), of
///   d(x',y)^{s2} / d(x',x'')^{s3} * |K(x',y) - K(x'',y)|.
SmoothnessResult smoothness_seminorm(const Kernel& kernel, const SampledMeasureSpace& space,
                                     double s2, double s3, const SeminormOptions& options = {});

struct SeminormReport {
  double s1 = 0.0;
  double potential_norm = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  std::optional<double> smoothness_seminorm;  // absent when no triple was admissible
  std::size_t admissible_triple_count = 0;
  bool containment_holds = false;

  /// Sum of both sup terms.
  double class_norm() const noexcept { return potential_norm + smoothness_seminorm.value_or(0.0); }
};

SeminormReport class_membership_report(const Kernel& kernel, const SampledMeasureSpace& space,
                                       double s1, double s2, double s3,
                                       const SeminormOptions& options = {});

}  // namespace uareg
