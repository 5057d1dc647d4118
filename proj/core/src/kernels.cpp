#include "uareg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "uareg/errors.hpp"
#include "uareg/numeric.hpp"
#include "uareg/parallel.hpp"

namespace uareg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_exponent(double s, const char* what) {
  if (!std::isfinite(s)) throw InvalidArgument(std::string(what) + " exponent must be finite");
}

template <class Matrix>
void check_table_domain(const Matrix& m, const std::string& domain,
                        const SampledMeasureSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  if (m.rows() != n || m.cols() != n)
    throw InvalidArgument("kernel table is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + " but the space has " +
                          std::to_string(space.size()) + " nodes");
  if (!domain.empty() && domain != space.label())
    throw InvalidArgument("kernel table built for '" + domain + "' evaluated on '" +
                          space.label() + "'");
}

// Family value at a pair known to be off the diagonal.
std::complex<double> value_at(const Kernel& kernel, const SampledMeasureSpace& space,
                              std::size_t i, std::size_t j) {
  return std::visit(
      Overloaded{
          [&](const Kernel::Riesz& k) -> std::complex<double> {
            return std::pow(space.distance(i, j), -k.s);
          },
          [&](const Kernel::LogRiesz& k) -> std::complex<double> {
            const double d = space.distance(i, j);
            return std::pow(d, -k.s) * (1.0 + std::abs(std::log(d)));
          },
          [&](const Kernel::Scaled& k) -> std::complex<double> {
            return k.lambda * value_at(*k.inner, space, i, j);
          },
          [&](const Kernel::Table& k) -> std::complex<double> {
            return (*k.values)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          },
          [&](const Kernel::ComplexTable& k) -> std::complex<double> {
            return (*k.values)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          },
      },
      kernel.family());
}

void check_domain(const Kernel& kernel, const SampledMeasureSpace& space) {
  std::visit(Overloaded{
                 [&](const Kernel::Scaled& k) { check_domain(*k.inner, space); },
                 [&](const Kernel::Table& k) { check_table_domain(*k.values, k.domain, space); },
                 [&](const Kernel::ComplexTable& k) {
                   check_table_domain(*k.values, k.domain, space);
                 },
                 [](const auto&) {},
             },
             kernel.family());
}

// Unwraps nested scalings: K = factor * base.
std::pair<const Kernel*, double> peel_scaling(const Kernel& kernel) {
  const Kernel* k = &kernel;
  double factor = 1.0;
  while (const auto* sc = std::get_if<Kernel::Scaled>(&k->family())) {
    factor *= sc->lambda;
    k = sc->inner.get();
  }
  return {k, factor};
}

template <class Matrix>
SmoothnessResult smoothness_from_table(const Matrix& table, const SampledMeasureSpace& space,
                                       double s2, double s3, const SeminormOptions& options) {
  const std::size_t n = space.size();
  SmoothnessResult result;
  std::vector<std::size_t> seconds(n);
  std::iota(seconds.begin(), seconds.end(), std::size_t{0});
  if (n > options.max_full_nodes) {
    std::mt19937_64 rng(options.seed);
    std::shuffle(seconds.begin(), seconds.end(), rng);
    seconds.resize(options.max_full_nodes);
    std::sort(seconds.begin(), seconds.end());
    result.subsampled = true;
  }
  const auto& dist = space.distances();
  Eigen::MatrixXd dist_s2 = dist.array().pow(s2).matrix();

  std::vector<double> row_max(n, 0.0);
  std::vector<std::size_t> row_count(n, 0);
  parallel_for(n, [&](std::size_t a) {
    double best = 0.0;
    std::size_t count = 0;
    for (std::size_t b : seconds) {
      if (b == a) continue;
      const double dab = dist(a, b);
      if (!(dab > 0.0)) continue;
      const double threshold = 2.0 * dab;
      const double scale = 1.0 / std::pow(dab, s3);
      for (std::size_t y = 0; y < n; ++y) {
        if (dist(a, y) < threshold) continue;
        ++count;
        const double jump = std::abs(table(a, y) - table(b, y));
        best = std::max(best, dist_s2(a, y) * scale * jump);
      }
    }
    row_max[a] = best;
    row_count[a] = count;
  });
  result.value = *std::max_element(row_max.begin(), row_max.end());
  result.admissible_triples = std::accumulate(row_count.begin(), row_count.end(), std::size_t{0});
  result.no_admissible_triples = result.admissible_triples == 0;
  if (result.no_admissible_triples) result.value = 0.0;
  return result;
}

}  // namespace

Kernel Kernel::riesz(double s) {
  check_exponent(s, "riesz");
  return Kernel(Riesz{s});
}

Kernel Kernel::log_riesz(double s) {
  check_exponent(s, "logriesz");
  return Kernel(LogRiesz{s});
}

Kernel Kernel::scaled(Kernel inner, double lambda) {
  if (!std::isfinite(lambda)) throw InvalidArgument("kernel scale must be finite");
  return Kernel(Scaled{std::make_shared<const Kernel>(std::move(inner)), lambda});
}

Kernel Kernel::tabulated(Eigen::MatrixXd values, std::string domain) {
  if (values.rows() != values.cols()) throw InvalidArgument("kernel table must be square");
  return Kernel(Table{std::make_shared<const Eigen::MatrixXd>(std::move(values)), std::move(domain)});
}

Kernel Kernel::tabulated(Eigen::MatrixXcd values, std::string domain) {
  if (values.rows() != values.cols()) throw InvalidArgument("kernel table must be square");
  return Kernel(
      ComplexTable{std::make_shared<const Eigen::MatrixXcd>(std::move(values)), std::move(domain)});
}

bool Kernel::is_complex() const noexcept {
  return std::visit(Overloaded{
                        [](const Scaled& k) { return k.inner->is_complex(); },
                        [](const ComplexTable&) { return true; },
                        [](const auto&) { return false; },
                    },
                    family_);
}

std::string Kernel::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const Riesz& k) { out << "riesz:" << format_number(k.s); },
                 [&](const LogRiesz& k) { out << "logriesz:" << format_number(k.s); },
                 [&](const Scaled& k) {
                   out << "scale:" << format_number(k.lambda) << ':' << k.inner->describe();
                 },
                 [&](const Table& k) {
                   out << "table[" << k.values->rows() << 'x' << k.values->cols() << ']';
                 },
                 [&](const ComplexTable& k) {
                   out << "ctable[" << k.values->rows() << 'x' << k.values->cols() << ']';
                 },
             },
             family_);
  return out.str();
}

Kernel parse_kernel_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("kernel spec '" + std::string(spec) + "' has no ':'");
  const std::string_view head = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);

  auto number = [&](std::string_view text) {
    std::string t(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ParseError("bad number '" + t + "' in kernel spec '" + std::string(spec) + "'");
    }
    if (used != t.size() || !std::isfinite(v))
      throw ParseError("bad number '" + t + "' in kernel spec '" + std::string(spec) + "'");
    return v;
  };

  if (head == "riesz") return Kernel::riesz(number(rest));
  if (head == "logriesz") return Kernel::log_riesz(number(rest));
  if (head == "scale") {
    const auto next = rest.find(':');
    if (next == std::string_view::npos)
      throw ParseError("scale spec needs 'scale:LAMBDA:<kernel>'");
    return Kernel::scaled(parse_kernel_spec(rest.substr(next + 1)), number(rest.substr(0, next)));
  }
  if (head == "table") {
    if (rest.empty()) throw ParseError("table spec needs a path");
    return Kernel::tabulated(load_kernel_table(std::string(rest)));
  }
  throw ParseError("unknown kernel family '" + std::string(head) + "'");
}

Eigen::MatrixXd load_kernel_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open kernel table '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    std::vector<double> values;
    for (std::string tok; row >> tok;) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("not a number: '" + tok + "'", line_no);
      }
      if (used != tok.size() || !std::isfinite(v))
        throw ParseError("not a finite number: '" + tok + "'", line_no);
      values.push_back(v);
    }
    if (!rows.empty() && values.size() != rows.front().size())
      throw ParseError("row length differs from the first row", line_no);
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("kernel table '" + path + "' is empty");
  if (rows.size() != rows.front().size())
    throw ParseError("kernel table is not square", line_no);
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

std::complex<double> eval(const Kernel& kernel, const SampledMeasureSpace& space, std::size_t i,
                          std::size_t j) {
  if (i >= space.size() || j >= space.size()) throw InvalidArgument("kernel index out of range");
  if (i == j)
    throw DiagonalAccess("kernel evaluated on the diagonal at node " + std::to_string(i));
  check_domain(kernel, space);
  return value_at(kernel, space, i, j);
}

double eval_real(const Kernel& kernel, const SampledMeasureSpace& space, std::size_t i,
                 std::size_t j) {
  if (kernel.is_complex()) throw InvalidArgument("eval_real on a complex-valued kernel");
  return eval(kernel, space, i, j).real();
}

Eigen::MatrixXd tabulate(const Kernel& kernel, const SampledMeasureSpace& space) {
  if (kernel.is_complex()) throw InvalidArgument("tabulate needs a real-valued kernel");
  check_domain(kernel, space);
  const std::size_t n = space.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) m(i, j) = value_at(kernel, space, i, j).real();
  });
  return m;
}

Eigen::MatrixXcd tabulate_complex(const Kernel& kernel, const SampledMeasureSpace& space) {
  check_domain(kernel, space);
  const std::size_t n = space.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) m(i, j) = value_at(kernel, space, i, j);
  });
  return m;
}

double potential_norm(const Kernel& kernel, const SampledMeasureSpace& space, double s) {
  const auto [base, factor] = peel_scaling(kernel);
  if (factor != 1.0) return std::abs(factor) * potential_norm(*base, space, s);
  check_domain(kernel, space);
  const std::size_t n = space.size();
  std::vector<double> row_max(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = space.distance(i, j);
      best = std::max(best, std::abs(value_at(kernel, space, i, j)) * std::pow(d, s));
    }
    row_max[i] = best;
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

SmoothnessResult smoothness_seminorm(const Kernel& kernel, const SampledMeasureSpace& space,
                                     double s2, double s3, const SeminormOptions& options) {
  if (!(s3 > 0.0)) throw InvalidArgument("smoothness seminorm needs s3 > 0");
  if (!std::isfinite(s2)) throw InvalidArgument("s2 must be finite");
  const auto [base, factor] = peel_scaling(kernel);
  if (factor != 1.0) {
    SmoothnessResult r = smoothness_seminorm(*base, space, s2, s3, options);
    r.value *= std::abs(factor);
    return r;
  }
  if (kernel.is_complex())
    return smoothness_from_table(tabulate_complex(kernel, space), space, s2, s3, options);
  return smoothness_from_table(tabulate(kernel, space), space, s2, s3, options);
}

SeminormReport class_membership_report(const Kernel& kernel, const SampledMeasureSpace& space,
                                       double s1, double s2, double s3,
                                       const SeminormOptions& options) {
  SeminormReport r;
  r.s1 = s1;
  r.s2 = s2;
  r.s3 = s3;
  r.potential_norm = potential_norm(kernel, space, s1);
  const SmoothnessResult smooth = smoothness_seminorm(kernel, space, s2, s3, options);
  r.admissible_triple_count = smooth.admissible_triples;
  if (!smooth.no_admissible_triples) r.smoothness_seminorm = smooth.value;
  r.containment_holds = r.potential_norm <= r.class_norm();
  return r;
}

}  // namespace uareg
