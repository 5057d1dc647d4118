#include "uareg/regularity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "uareg/ahlfors.hpp"
#include "uareg/errors.hpp"
#include "uareg/numeric.hpp"
#include "uareg/nystrom.hpp"
#include "uareg/parallel.hpp"

namespace uareg {

namespace {

double parse_number(std::string_view tok, std::string_view whole) {
  const std::string s(tok);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v))
    throw ParseError("datum '" + std::string(whole) + "': bad number '" + s + "'");
  return v;
}

std::size_t parse_index(std::string_view tok, std::string_view whole) {
  const double v = parse_number(tok, whole);
  if (v < 0.0 || v != std::floor(v))
    throw ParseError("datum '" + std::string(whole) + "': bad index '" + std::string(tok) + "'");
  return static_cast<std::size_t>(v);
}

double sup_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

Eigen::VectorXd ones(std::size_t n) { return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n)); }

double max_neighbour_jump(const Eigen::VectorXd& f, const SampledMeasureSpace& space) {
  const std::size_t n = space.size();
  double jump = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t nn = i;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double d = space.distance(i, j);
      if (j != i && d > 0.0 && d < best) {
        best = d;
        nn = j;
      }
    }
    if (nn != i)
      jump = std::max(jump, std::abs(f(static_cast<Eigen::Index>(i)) - f(static_cast<Eigen::Index>(nn))));
  }
  return jump;
}

void check_meshes(const ExperimentSetup& setup) {
  if (setup.meshes.size() < 2) throw InvalidArgument("an experiment needs at least two meshes");
  for (const auto& m : setup.meshes)
    if (!m) throw InvalidArgument("experiment mesh is null");
  if (!setup.kernel) throw InvalidArgument("experiment needs a kernel factory");
  if (setup.target_norm && (!(*setup.target_norm > 0.0) || !(*setup.target_norm < 1.0)))
    throw InvalidArgument("target norm must lie in (0, 1)");
}

// lambda is taken from the finest mesh and reused on every mesh.
double experiment_lambda(const ExperimentSetup& setup) {
  if (!setup.target_norm) return 1.0;
  const auto& finest = setup.meshes.back();
  const NystromSystem sys = NystromSystem::assemble(finest, setup.kernel(*finest));
  if (!(sys.row_sum_norm() > 0.0)) return 1.0;
  return normalize_to(sys, *setup.target_norm);
}

NystromSystem experiment_system(const ExperimentSetup& setup, std::size_t k, double lambda) {
  const auto& space = setup.meshes[k];
  const NystromSystem sys = NystromSystem::assemble(space, setup.kernel(*space));
  return lambda == 1.0 ? sys : sys.scaled(lambda);
}

// Seminorms at round-off level carry no growth information.
double noise_floor(const Eigen::VectorXd& f, const Modulus& modulus, double min_dist) {
  const double w = modulus(min_dist);
  if (!(w > 0.0)) return 0.0;
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, sup_norm(f)) / w;
}

std::string format_class_exponents(double s1, double s2, double s3) {
  std::ostringstream out;
  out << "K_{" << s1 << ',' << s2 << ',' << s3 << '}';
  return out.str();
}

Modulus combine_with_theta(double theta, const Modulus& cls) {
  return Modulus::max_of({Modulus::power(theta), cls});
}

RegularityExperimentReport holder_run(const ExperimentSetup& setup, const ClassParameters& params,
                                      const HolderExperimentOptions& options,
                                      const Modulus& class_modulus, bool improved) {
  check_meshes(setup);
  if (!(params.theta > 0.0) || params.theta > 1.0) throw InvalidArgument("theta must lie in (0, 1]");
  if (!(options.growth_limit >= 1.0)) throw InvalidArgument("growth limit must be >= 1");

  RegularityExperimentReport report;
  report.params = params;
  report.class_modulus = class_modulus.to_string();
  const Modulus predicted = combine_with_theta(params.theta, class_modulus);
  report.predicted_modulus = predicted.to_string();
  report.growth_limit = options.growth_limit;
  report.lambda = experiment_lambda(setup);

  const Modulus datum_modulus = Modulus::power(params.theta);
  const std::size_t count = setup.meshes.size();
  std::vector<NystromSystem> systems;
  systems.reserve(count);
  for (std::size_t k = 0; k < count; ++k) systems.push_back(experiment_system(setup, k, report.lambda));

  if (improved) {
    std::vector<double> values;
    std::vector<double> floors;
    for (std::size_t k = 0; k < count; ++k) {
      const Eigen::VectorXd a1 = apply(systems[k], ones(systems[k].size()));
      const HolderEstimate h = holder_seminorm(a1, systems[k].space(), class_modulus);
      values.push_back(h.seminorm);
      floors.push_back(noise_floor(a1, class_modulus, h.min_dist));
    }
    bool stable = std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
    for (std::size_t k = 1; k < count; ++k) {
      const double g = growth_ratio(values[k - 1], values[k], std::max(floors[k - 1], floors[k]));
      report.hypothesis_growth.push_back(g);
      if (!(g <= options.growth_limit)) stable = false;
    }
    if (!stable)
      throw HypothesisError("A[K,1] is not mesh-stably continuous under " + class_modulus.to_string(),
                            values);
    report.meshes.resize(count);
    for (std::size_t k = 0; k < count; ++k) report.meshes[k].hypothesis_seminorm = values[k];
  } else {
    report.meshes.resize(count);
  }

  if (options.check_class) {
    std::vector<double> norms;
    for (std::size_t k = 0; k < count; ++k) {
      const auto& space = *setup.meshes[k];
      const Kernel kernel = Kernel::scaled(setup.kernel(space), report.lambda);
      const SeminormReport c =
          class_membership_report(kernel, space, params.s1, params.s2, params.s3, options.seminorm);
      norms.push_back(c.class_norm());
      report.meshes[k].class_norm = c.class_norm();
    }
    bool stable = std::all_of(norms.begin(), norms.end(), [](double v) { return std::isfinite(v); });
    for (std::size_t k = 1; k < count; ++k) {
      report.class_norm_ratios.push_back(norms[k - 1] > 0.0 ? norms[k] / norms[k - 1]
                                                            : (norms[k] > 0.0 ? INFINITY : 1.0));
      if (!mesh_stable(norms[k - 1], norms[k], options.class_stability_factor)) stable = false;
    }
    if (!stable)
      throw HypothesisError("kernel class seminorms for " +
                                format_class_exponents(params.s1, params.s2, params.s3) +
                                " are not mesh-stable",
                            norms);
  }

  std::vector<double> floors(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto& space = *setup.meshes[k];
    const Eigen::VectorXd g = evaluate_datum(setup.datum, space);
    const SolveReport solve = solve_direct(systems[k], g);
    const HolderEstimate h = holder_seminorm(solve.mu, space, predicted);
    RegularityMesh& m = report.meshes[k];
    m.label = space.label();
    m.n = space.size();
    m.mesh = space.mesh();
    m.min_dist = h.min_dist;
    m.seminorm = h.seminorm;
    m.argmax = h.argmax;
    m.datum_seminorm = holder_seminorm(g, space, datum_modulus).seminorm;
    m.solution_sup = sup_norm(solve.mu);
    m.residual_inf = solve.residual_inf;
    floors[k] = noise_floor(solve.mu, predicted, h.min_dist);
  }
  report.passed = true;
  for (std::size_t k = 1; k < count; ++k) {
    const double g = growth_ratio(report.meshes[k - 1].seminorm, report.meshes[k].seminorm,
                                  std::max(floors[k - 1], floors[k]));
    report.growth_ratios.push_back(g);
    if (!(g <= options.growth_limit)) report.passed = false;
  }
  return report;
}

}  // namespace

std::string Datum::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::constant:
      out << "const:" << format_number(value);
      break;
    case Kind::coordinate:
      out << "coord:" << index;
      break;
    case Kind::distance_power:
      out << "distpow:" << format_number(value) << '@' << index;
      break;
    case Kind::step:
      out << "step:" << index << ':' << format_number(value);
      break;
  }
  return out.str();
}

Datum parse_datum(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("datum '" + std::string(text) + "': expected kind:args");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  Datum d;
  if (kind == "const") {
    d.kind = Datum::Kind::constant;
    d.value = parse_number(args, text);
  } else if (kind == "coord") {
    d.kind = Datum::Kind::coordinate;
    d.index = parse_index(args, text);
  } else if (kind == "distpow") {
    d.kind = Datum::Kind::distance_power;
    const auto at = args.find('@');
    d.value = parse_number(args.substr(0, at), text);
    if (at != std::string_view::npos) d.index = parse_index(args.substr(at + 1), text);
    if (!(d.value > 0.0) || d.value > 1.0)
      throw ParseError("datum '" + std::string(text) + "': exponent must lie in (0, 1]");
  } else if (kind == "step") {
    d.kind = Datum::Kind::step;
    const auto sep = args.find(':');
    d.index = parse_index(args.substr(0, sep), text);
    if (sep != std::string_view::npos) d.value = parse_number(args.substr(sep + 1), text);
  } else {
    throw ParseError("datum '" + std::string(text) + "': unknown kind '" + std::string(kind) + "'");
  }
  return d;
}

Eigen::VectorXd evaluate_datum(const Datum& datum, const SampledMeasureSpace& space) {
  const std::size_t n = space.size();
  Eigen::VectorXd g(static_cast<Eigen::Index>(n));
  const bool needs_coordinate = datum.kind == Datum::Kind::coordinate || datum.kind == Datum::Kind::step;
  if (needs_coordinate && datum.index >= space.dimension())
    throw InvalidArgument("datum " + datum.to_string() + " needs coordinate " +
                          std::to_string(datum.index) + " but the space has dimension " +
                          std::to_string(space.dimension()));
  if (datum.kind == Datum::Kind::distance_power && datum.index >= n)
    throw InvalidArgument("datum " + datum.to_string() + " centre is not a node");
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    switch (datum.kind) {
      case Datum::Kind::constant:
        v = datum.value;
        break;
      case Datum::Kind::coordinate:
        v = space.point(i)[datum.index];
        break;
      case Datum::Kind::distance_power:
        v = std::pow(space.distance(i, datum.index), datum.value);
        break;
      case Datum::Kind::step:
        v = space.point(i)[datum.index] >= datum.value ? 1.0 : 0.0;
        break;
    }
    g(static_cast<Eigen::Index>(i)) = v;
  }
  return g;
}

HolderEstimate holder_seminorm(const Eigen::VectorXd& f, const SampledMeasureSpace& space,
                               const Modulus& modulus, std::optional<double> min_dist) {
  const std::size_t n = space.size();
  if (static_cast<std::size_t>(f.size()) != n)
    throw InvalidArgument("function length does not match the space");
  const double cutoff = min_dist.value_or(2.0 * space.mesh());
  if (!(cutoff >= 0.0)) throw InvalidArgument("min_dist must be >= 0");
  if (!check_modulus_conditions(modulus, modulus_t_grid()).passed)
    throw InvalidArgument("modulus " + modulus.to_string() + " fails the modulus conditions");

  HolderEstimate est;
  est.modulus = modulus.to_string();
  est.min_dist = cutoff;
  const double lo = std::max(cutoff, space.mesh());
  const double hi = std::max(space.diameter(), lo);
  const double log_lo = std::log(lo);
  const double span = hi > lo ? std::log(hi) - log_lo : 1.0;
  est.by_scale.resize(kScaleBins);
  for (int b = 0; b < kScaleBins; ++b) {
    est.by_scale[static_cast<std::size_t>(b)].lo = std::exp(log_lo + span * b / kScaleBins);
    est.by_scale[static_cast<std::size_t>(b)].hi = std::exp(log_lo + span * (b + 1) / kScaleBins);
  }

  struct Row {
    double best = -1.0;
    std::size_t arg = 0;
    std::size_t pairs = 0;
    std::array<double, kScaleBins> sup{};
    std::array<std::size_t, kScaleBins> count{};
  };
  std::vector<Row> rows(n);
  parallel_for(n, [&](std::size_t i) {
    Row& row = rows[i];
    const double fi = f(static_cast<Eigen::Index>(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = space.distance(i, j);
      if (!(d > 0.0) || d < cutoff) continue;
      const double q = std::abs(fi - f(static_cast<Eigen::Index>(j))) / modulus(d);
      ++row.pairs;
      if (q > row.best) {
        row.best = q;
        row.arg = j;
      }
      const int b = std::clamp(static_cast<int>((std::log(d) - log_lo) / span * kScaleBins), 0,
                               kScaleBins - 1);
      row.sup[static_cast<std::size_t>(b)] = std::max(row.sup[static_cast<std::size_t>(b)], q);
      ++row.count[static_cast<std::size_t>(b)];
    }
  });

  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Row& row = rows[i];
    est.admitted_pairs += row.pairs;
    if (row.pairs && row.best > best) {
      best = row.best;
      est.argmax = {i, row.arg};
    }
    for (std::size_t b = 0; b < kScaleBins; ++b) {
      est.by_scale[b].sup = std::max(est.by_scale[b].sup, row.sup[b]);
      est.by_scale[b].pairs += row.count[b];
    }
  }
  if (est.admitted_pairs == 0)
    throw InvalidArgument("no pair at distance >= " + std::to_string(cutoff) + " on " + space.label());
  est.seminorm = best;
  return est;
}

RestrictedBoundCheck check_restricted_bound(const Eigen::VectorXd& f,
                                            const SampledMeasureSpace& space,
                                            const Modulus& modulus, double a) {
  if (!(a > 0.0)) throw InvalidArgument("restricted bound check needs a > 0");
  RestrictedBoundCheck c;
  c.a = a;
  try {
    c.lhs = holder_seminorm(f, space, modulus, a).seminorm;
  } catch (const InvalidArgument&) {
    if (static_cast<std::size_t>(f.size()) != space.size()) throw;
    c.lhs = 0.0;  // no pair at distance >= a: empty sup
  }
  c.rhs = 2.0 * sup_norm(f) / modulus(a);
  c.slack = c.rhs - c.lhs;
  c.passed = c.lhs <= c.rhs * (1.0 + 1e-12);
  return c;
}

KernelFactory constant_kernel_factory(Kernel kernel) {
  return [kernel = std::move(kernel)](const SampledMeasureSpace&) { return kernel; };
}

ContinuityReport run_continuity_experiment(const ExperimentSetup& setup, double max_jump_ratio) {
  check_meshes(setup);
  if (!(max_jump_ratio > 0.0) || !(max_jump_ratio < 1.0))
    throw InvalidArgument("max jump ratio must lie in (0, 1)");
  ContinuityReport report;
  report.max_jump_ratio = max_jump_ratio;
  report.lambda = experiment_lambda(setup);
  for (std::size_t k = 0; k < setup.meshes.size(); ++k) {
    const auto& space = *setup.meshes[k];
    const NystromSystem sys = experiment_system(setup, k, report.lambda);
    const Eigen::VectorXd g = evaluate_datum(setup.datum, space);
    const SolveReport solve = solve_direct(sys, g);
    ContinuityMesh m;
    m.label = space.label();
    m.n = space.size();
    m.mesh = space.mesh();
    m.solution_jump = max_neighbour_jump(solve.mu, space);
    m.datum_jump = max_neighbour_jump(g, space);
    m.residual_inf = solve.residual_inf;
    report.meshes.push_back(m);
  }
  // a jump at round-off level counts as vanished
  const auto ratio = [](double coarse, double fine) {
    constexpr double kFloor = 1e-13;
    return fine <= kFloor ? 0.0 : growth_ratio(coarse, fine, kFloor);
  };
  report.passed = true;
  for (std::size_t k = 1; k < report.meshes.size(); ++k) {
    const double r = ratio(report.meshes[k - 1].solution_jump, report.meshes[k].solution_jump);
    const double rg = ratio(report.meshes[k - 1].datum_jump, report.meshes[k].datum_jump);
    report.jump_ratios.push_back(r);
    report.datum_jump_ratios.push_back(rg);
    if (!(r <= max_jump_ratio)) report.passed = false;
    if (!(rg <= max_jump_ratio)) report.datum_discontinuous = true;
  }
  if (report.datum_discontinuous) report.passed = false;
  return report;
}

RegularityExperimentReport run_holder_experiment(const ExperimentSetup& setup,
                                                 const ClassParameters& params,
                                                 const HolderExperimentOptions& options) {
  const Modulus varpi =
      modulus_varpi(params.s1, params.s2, params.s3, params.upsilon, params.strong_regular);
  return holder_run(setup, params, options, varpi, false);
}

RegularityExperimentReport run_improved_holder_experiment(const ExperimentSetup& setup,
                                                          const ClassParameters& params,
                                                          const HolderExperimentOptions& options) {
  if (!params.beta) throw InvalidArgument("the improved experiment needs beta");
  const Modulus omega = modulus_omega(params.s1, params.s2, params.s3, *params.beta, params.upsilon,
                                      params.strong_regular);
  return holder_run(setup, params, options, omega, true);
}

double growth_ratio(double coarse, double fine, double floor) noexcept {
  const double c = std::max(coarse, floor);
  const double f = std::max(fine, floor);
  if (!(c > 0.0)) return f > 0.0 ? INFINITY : 1.0;
  return f / c;
}

}  // namespace uareg
