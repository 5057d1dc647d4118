#pragma once

// Nystrom discretization of A[K, f](x) = int_Y K(x, y) f(y) dnu(y) on a
// sampled space, with an exact zero diagonal, numeric kernel composition and
// second-kind solves mu - A mu = g.

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "uareg/kernels.hpp"
#include "uareg/sampled_space.hpp"

namespace uareg {

class NystromSystem {
 public:
  /// A[i][j] = w_j K(x_i, x_j) for i != j, A[i][i] = 0. Throws AssemblyError
  /// naming the first pair with a non-finite kernel value, InvalidArgument
  /// for complex-valued kernels.
  static NystromSystem assemble(std::shared_ptr<const SampledMeasureSpace> space,
                                const Kernel& kernel);
  static NystromSystem assemble(const SampledMeasureSpace& space, const Kernel& kernel);

  const SampledMeasureSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const SampledMeasureSpace>& space_ptr() const noexcept { return space_; }
  std::size_t size() const noexcept { return space_->size(); }
  /// K(x_i, x_j) off the diagonal, 0 on it.
  const Eigen::MatrixXd& kernel_table() const noexcept { return table_; }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  /// max_i sum_j |A[i][j]|
  double row_sum_norm() const noexcept { return row_sum_norm_; }

  /// The system of lambda * K.
  NystromSystem scaled(double lambda) const;

 private:
  NystromSystem(std::shared_ptr<const SampledMeasureSpace> space, Eigen::MatrixXd table);
  std::shared_ptr<const SampledMeasureSpace> space_;
  Eigen::MatrixXd table_;
  Eigen::MatrixXd matrix_;
  double row_sum_norm_ = 0.0;
};

double row_sum_norm(const Eigen::MatrixXd& a);

/// lambda = target / row_sum_norm. Requires a nonzero norm and target in (0, 1).
double normalize_to(const NystromSystem& system, double target_norm);

/// A f, each row summed with compensation in column order.
Eigen::VectorXd apply(const NystromSystem& system, const Eigen::VectorXd& f);

/// K3(x_i, x_j) = sum_{t not in {i, j}} w_t K1(x_i, x_t) K2(x_t, x_j), as a
/// table bound to the space label.
Kernel compose_numeric(const NystromSystem& first, const NystromSystem& second);

/// r-fold composite K^(r); r = 1 is the tabulation of K.
Kernel iterate_kernel(const NystromSystem& system, int r);

enum class SolveMethod { direct, neumann };
std::string_view solve_method_name(SolveMethod m) noexcept;

struct SolveReport {
  Eigen::VectorXd mu;
  double residual_inf = 0.0;
  SolveMethod method = SolveMethod::direct;
  std::optional<int> neumann_terms;
  std::optional<double> condition_estimate;
  int refinement_steps = 0;
};

struct DirectSolveOptions {
  /// residual_inf must end below residual_tolerance * (1 + max|g|)
  double residual_tolerance = 1e-10;
  double condition_limit = 1e12;
  int max_refinement_steps = 3;
};

/// max_i |mu_i - (A mu)_i - g_i|
double residual_inf(const NystromSystem& system, const Eigen::VectorXd& mu,
                    const Eigen::VectorXd& g);

/// LU solve of (I - A) mu = g with iterative refinement. Throws SolveError
/// when the 1-norm condition estimate exceeds the limit or the residual
/// target is missed.
SolveReport solve_direct(const NystromSystem& system, const Eigen::VectorXd& g,
                         const DirectSolveOptions& options = {});

/// mu = sum_j A^j g, stopping before the first term with max-norm < tol.
/// Throws SolveError when row_sum_norm >= 1 or max_terms is exhausted.
SolveReport solve_neumann(const NystromSystem& system, const Eigen::VectorXd& g,
                          double tol = 1e-12, int max_terms = 10000);

struct BootstrapCheck {
  int r = 0;
  double deviation = 0.0;  // max_i |(A^r mu)_i - mu_i + sum_{j<r} (A^j g)_i|
  double scale = 1.0;      // max(1, max|mu|, max|g|)
  double relative = 0.0;   // deviation / scale
  double budget = 0.0;     // r n 1e-12 scale
  bool within_budget = false;
};

BootstrapCheck verify_bootstrap(const NystromSystem& system, const Eigen::VectorXd& mu,
                                const Eigen::VectorXd& g, int r);

}  // namespace uareg
