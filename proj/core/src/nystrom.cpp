#include "uareg/nystrom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "uareg/errors.hpp"
#include "uareg/numeric.hpp"
#include "uareg/parallel.hpp"

namespace uareg {

namespace {

struct NoDelete {
  void operator()(const SampledMeasureSpace*) const noexcept {}
};

void check_length(const NystromSystem& system, const Eigen::VectorXd& v, const char* what) {
  if (static_cast<std::size_t>(v.size()) != system.size())
    throw InvalidArgument(std::string(what) + " has length " + std::to_string(v.size()) +
                          ", expected " + std::to_string(system.size()));
}

double sup_norm(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

bool same_space(const SampledMeasureSpace& a, const SampledMeasureSpace& b) {
  if (&a == &b) return true;
  if (a.size() != b.size() || a.label() != b.label()) return false;
  return std::equal(a.weights().begin(), a.weights().end(), b.weights().begin()) &&
         a.distances() == b.distances();
}

Eigen::MatrixXd compose_tables(const Eigen::MatrixXd& left_weighted, const Eigen::MatrixXd& right) {
  Eigen::MatrixXd k3 = left_weighted * right;
  k3.diagonal().setZero();
  return k3;
}

}  // namespace

double row_sum_norm(const Eigen::MatrixXd& a) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    CompensatedSum s;
    for (Eigen::Index j = 0; j < a.cols(); ++j) s.add(std::abs(a(i, j)));
    best = std::max(best, s.value());
  }
  return best;
}

NystromSystem::NystromSystem(std::shared_ptr<const SampledMeasureSpace> space,
                             Eigen::MatrixXd table)
    : space_(std::move(space)), table_(std::move(table)) {
  const auto n = static_cast<Eigen::Index>(space_->size());
  Eigen::VectorXd w(n);
  for (Eigen::Index j = 0; j < n; ++j) w(j) = space_->weight(static_cast<std::size_t>(j));
  table_.diagonal().setZero();
  matrix_ = table_ * w.asDiagonal();
  row_sum_norm_ = uareg::row_sum_norm(matrix_);
}

NystromSystem NystromSystem::assemble(std::shared_ptr<const SampledMeasureSpace> space,
                                      const Kernel& kernel) {
  if (!space) throw InvalidArgument("assemble needs a space");
  if (kernel.is_complex())
    throw InvalidArgument("the Nystrom solver handles real-valued kernels only");
  Eigen::MatrixXd table = tabulate(kernel, *space);
  const auto n = table.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && !std::isfinite(table(i, j)))
        throw AssemblyError("kernel " + kernel.describe() + " is not finite at pair (" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");
  return NystromSystem(std::move(space), std::move(table));
}

NystromSystem NystromSystem::assemble(const SampledMeasureSpace& space, const Kernel& kernel) {
  return assemble(std::shared_ptr<const SampledMeasureSpace>(&space, NoDelete{}), kernel);
}

NystromSystem NystromSystem::scaled(double lambda) const {
  if (!std::isfinite(lambda)) throw InvalidArgument("scale factor must be finite");
  return NystromSystem(space_, lambda * table_);
}

double normalize_to(const NystromSystem& system, double target_norm) {
  if (!(target_norm > 0.0) || !(target_norm < 1.0))
    throw InvalidArgument("target norm must lie in (0, 1)");
  if (!(system.row_sum_norm() > 0.0))
    throw InvalidArgument("cannot normalize a system with zero row-sum norm");
  return target_norm / system.row_sum_norm();
}

Eigen::VectorXd apply(const NystromSystem& system, const Eigen::VectorXd& f) {
  check_length(system, f, "vector");
  const Eigen::MatrixXd& a = system.matrix();
  const auto n = a.rows();
  Eigen::VectorXd out(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    CompensatedSum s;
    for (Eigen::Index j = 0; j < n; ++j) s.add(a(i, j) * f(j));
    out(i) = s.value();
  });
  return out;
}

Kernel compose_numeric(const NystromSystem& first, const NystromSystem& second) {
  if (!same_space(first.space(), second.space()))
    throw InvalidArgument("compose_numeric needs both systems on the same space");
  // A1 = K1 diag(w); zero diagonals of K1 and K2 drop t = i and t = j.
  return Kernel::tabulated(compose_tables(first.matrix(), second.kernel_table()),
                           first.space().label());
}

Kernel iterate_kernel(const NystromSystem& system, int r) {
  if (r < 1) throw InvalidArgument("iteration count must be >= 1");
  Eigen::MatrixXd current = system.kernel_table();
  if (r > 1) {
    const auto n = current.rows();
    Eigen::VectorXd w(n);
    for (Eigen::Index j = 0; j < n; ++j) w(j) = system.space().weight(static_cast<std::size_t>(j));
    for (int step = 1; step < r; ++step)
      current = compose_tables(current * w.asDiagonal(), system.kernel_table());
  }
  return Kernel::tabulated(std::move(current), system.space().label());
}

std::string_view solve_method_name(SolveMethod m) noexcept {
  return m == SolveMethod::direct ? "direct" : "neumann";
}

double residual_inf(const NystromSystem& system, const Eigen::VectorXd& mu,
                    const Eigen::VectorXd& g) {
  check_length(system, mu, "mu");
  check_length(system, g, "g");
  return sup_norm(mu - apply(system, mu) - g);
}

SolveReport solve_direct(const NystromSystem& system, const Eigen::VectorXd& g,
                         const DirectSolveOptions& options) {
  check_length(system, g, "g");
  const auto n = static_cast<Eigen::Index>(system.size());
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - system.matrix();
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const double rcond = lu.rcond();
  const double condition = rcond > 0.0 ? 1.0 / rcond : INFINITY;
  if (!(condition <= options.condition_limit))
    throw SolveError("I - A is singular or ill-conditioned (condition estimate " +
                     std::to_string(condition) + ")");

  SolveReport report;
  report.method = SolveMethod::direct;
  report.condition_estimate = condition;
  report.mu = lu.solve(g);
  const double target = options.residual_tolerance * (1.0 + sup_norm(g));
  report.residual_inf = residual_inf(system, report.mu, g);
  while (report.residual_inf > target && report.refinement_steps < options.max_refinement_steps) {
    const Eigen::VectorXd r = g - (report.mu - apply(system, report.mu));
    report.mu += lu.solve(r);
    report.residual_inf = residual_inf(system, report.mu, g);
    ++report.refinement_steps;
  }
  if (!(report.residual_inf <= target))
    throw SolveError("direct solve residual " + std::to_string(report.residual_inf) +
                     " exceeds " + std::to_string(target));
  return report;
}

SolveReport solve_neumann(const NystromSystem& system, const Eigen::VectorXd& g, double tol,
                          int max_terms) {
  check_length(system, g, "g");
  if (!(tol > 0.0)) throw InvalidArgument("Neumann tolerance must be positive");
  if (max_terms < 1) throw InvalidArgument("Neumann max_terms must be >= 1");
  if (!(system.row_sum_norm() < 1.0))
    throw SolveError("Neumann series refused: row-sum norm " +
                     std::to_string(system.row_sum_norm()) + " is not below 1");
  SolveReport report;
  report.method = SolveMethod::neumann;
  report.mu = g;
  Eigen::VectorXd term = g;
  int terms = 1;
  for (;;) {
    term = apply(system, term);
    if (sup_norm(term) < tol) break;
    if (terms == max_terms)
      throw SolveError("Neumann series did not reach tolerance within " +
                       std::to_string(max_terms) + " terms");
    report.mu += term;
    ++terms;
  }
  report.neumann_terms = terms;
  report.residual_inf = residual_inf(system, report.mu, g);
  return report;
}

BootstrapCheck verify_bootstrap(const NystromSystem& system, const Eigen::VectorXd& mu,
                                const Eigen::VectorXd& g, int r) {
  check_length(system, mu, "mu");
  check_length(system, g, "g");
  if (r < 1) throw InvalidArgument("bootstrap order must be >= 1");
  Eigen::VectorXd ar_mu = mu;
  for (int k = 0; k < r; ++k) ar_mu = apply(system, ar_mu);
  Eigen::VectorXd series = Eigen::VectorXd::Zero(g.size());
  Eigen::VectorXd aj_g = g;
  for (int j = 0; j < r; ++j) {
    series += aj_g;
    if (j + 1 < r) aj_g = apply(system, aj_g);
  }
  BootstrapCheck c;
  c.r = r;
  c.deviation = sup_norm(ar_mu - mu + series);
  c.scale = std::max({1.0, sup_norm(mu), sup_norm(g)});
  c.relative = c.deviation / c.scale;
  c.budget = r * static_cast<double>(system.size()) * 1e-12 * c.scale;
  c.within_budget = c.deviation <= c.budget;
  return c;
}

}  // namespace uareg
