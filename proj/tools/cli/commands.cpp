#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "cli/report.hpp"
#include "cli/space_spec.hpp"
#include "uareg/errors.hpp"
#include "uareg/numeric.hpp"
#include "uareg/version.hpp"

namespace uareg::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string space;
  std::string meshes;
  std::string kernel;
  std::string datum = "const:1";
  double upsilon = 1.0;
  std::uint64_t seed = 0;
  std::string out;

  // check-ahlfors
  bool strong = false;
  std::optional<double> ceiling;
  std::optional<double> r_cutoff;
  std::optional<double> min_annulus_width;
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  double grid_ratio = kDefaultGridRatio;

  // compose-class
  std::vector<std::string> tokens;
  double epsilon = kDefaultEpsilon;

  // solve / experiment / seminorm
  bool no_scale = false;
  double target_norm = 0.5;
  double residual_tol = 1e-10;
  double neumann_tol = 1e-12;
  int max_terms = 10000;
  std::string bootstrap_orders = "1,2,3";
  std::string dump_mu;

  // experiment
  std::string mode = "holder";
  std::string class_spec;
  double theta = 0.5;
  std::optional<double> beta;
  double growth_limit = 1.25;
  double stability_factor = 2.0;
  double max_jump_ratio = 0.9;
  bool no_class_check = false;

  // verify-bounds
  std::optional<double> s;
  std::vector<double> a;
  std::optional<double> c_upper;
  std::optional<double> s2;
  std::size_t pairs = 4096;

  // seminorm
  std::string modulus = "r^1";
  std::optional<double> min_dist;
  std::optional<double> restricted_a;
};

struct Outcome {
  Json config;
  Json result;
  bool passed = true;
};

Json opt(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

std::vector<std::shared_ptr<const SampledMeasureSpace>> resolve_meshes(const RunConfig& c,
                                                                        bool require_multiple) {
  if (c.space.empty()) throw UsageError("--space is required");
  const SpaceSpec spec = parse_space_spec(c.space);
  const auto sizes = c.meshes.empty() ? std::vector<std::size_t>{} : parse_mesh_list(c.meshes);
  if (require_multiple && sizes.size() < 2)
    throw UsageError("--meshes needs at least two entries");
  return build_meshes(spec, sizes);
}

Json mesh_labels(const std::vector<std::shared_ptr<const SampledMeasureSpace>>& meshes) {
  Json a = Json::array();
  for (const auto& m : meshes) a.push_back(m->label());
  return a;
}

Kernel require_kernel(const RunConfig& c) {
  if (c.kernel.empty()) throw UsageError("--kernel is required");
  return parse_kernel_spec(c.kernel);
}

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  for (auto n : parse_mesh_list(text)) {
    if (n < 1 || n > 64) throw UsageError("bootstrap orders must lie in [1, 64]");
    out.push_back(static_cast<int>(n));
  }
  return out;
}

std::vector<double> scale_grid(const SampledMeasureSpace& space, double cap) {
  const double lo = 2.0 * space.mesh();
  const double hi = std::min(0.25 * space.diameter(), cap);
  if (!(lo > 0.0) || !(hi > lo)) throw UsageError("space " + space.label() + " is too coarse for a scale grid");
  return geometric_grid(lo, hi);
}

Outcome cmd_check_ahlfors(const RunConfig& c) {
  const auto meshes = resolve_meshes(c, false);
  if (meshes.size() != 1) throw UsageError("check-ahlfors takes a single space");
  const SampledMeasureSpace& space = *meshes.front();
  Outcome o;
  o.config = {{"space", c.space},
              {"upsilon", number(c.upsilon)},
              {"strong", c.strong},
              {"ceiling", opt(c.ceiling)},
              {"r_cutoff", opt(c.r_cutoff)},
              {"min_annulus_width", opt(c.min_annulus_width)},
              {"grid_min", opt(c.grid_min)},
              {"grid_max", opt(c.grid_max)},
              {"grid_ratio", number(c.grid_ratio)}};

  std::vector<double> grid;
  if (c.grid_min || c.grid_max) {
    const auto fallback = default_radius_grid(space);
    grid = geometric_grid(c.grid_min.value_or(fallback.front()), c.grid_max.value_or(fallback.back()),
                          c.grid_ratio);
  } else {
    grid = default_radius_grid(space);
  }
  AhlforsOptions options;
  options.ceiling = c.ceiling;
  options.r_cutoff = c.r_cutoff;
  options.min_annulus_width = c.min_annulus_width;
  const AhlforsReport upper = estimate_upper_ahlfors(space, c.upsilon, grid, options);
  o.result["space"] = {{"label", space.label()},
                       {"n", space.size()},
                       {"total_mass", number(space.total_mass())},
                       {"mesh", number(space.mesh())},
                       {"diameter", number(space.diameter())}};
  o.result["grid"] = {{"points", grid.size()}, {"min", number(grid.front())}, {"max", number(grid.back())}};
  o.result["upper"] = to_json(upper);
  o.passed = upper.passed;
  if (c.strong) {
    const AhlforsReport strong = estimate_strong_upper_ahlfors(space, c.upsilon, grid, options);
    o.result["strong"] = to_json(strong);
    o.passed = o.passed && strong.passed;
  }
  return o;
}

Outcome cmd_compose_class(const RunConfig& c) {
  std::optional<KernelClass> first;
  std::optional<Split> split;
  std::optional<double> t1;
  for (const auto& tok : c.tokens) {
    if (tok.starts_with("class:")) {
      first = parse_class_spec(tok);
    } else if (tok.starts_with("split:")) {
      split = parse_split(tok);
    } else if (tok.starts_with("t1:")) {
      std::istringstream in(tok.substr(3));
      double v = 0.0;
      if (!(in >> v) || !in.eof()) throw UsageError("bad token '" + tok + "'");
      t1 = v;
    } else {
      throw UsageError("unknown token '" + tok + "' (class:, split:, t1:)");
    }
  }
  if (!first || !t1) throw UsageError("compose-class needs class:s1,s2,s3@u and t1:t");
  Outcome o;
  o.config = {{"class", format_class(*first)},
              {"split", split ? Json{number(split->s2_prime), number(split->s2_second)} : Json(nullptr)},
              {"t1", number(*t1)},
              {"strong", c.strong},
              {"epsilon", number(c.epsilon)}};
  bool suggested = false;
  if (!split) {
    split = suggest_split(*first, *t1, c.strong);
    if (!split) throw UsageError("no admissible split exists for these exponents");
    suggested = true;
  }
  const GeneralComposition g = compose_general(*first, *split, *t1, c.strong, c.epsilon);
  o.result["split"] = {{"s2_prime", number(split->s2_prime)},
                       {"s2_second", number(split->s2_second)},
                       {"suggested", suggested}};
  o.result["composition"] = to_json(g);
  o.result["smoothing_order"] = {{"s", number(first->s1)},
                                 {"upsilon", number(first->upsilon)},
                                 {"order", smoothing_order(first->s1, first->upsilon)}};
  return o;
}

void dump_vector(const std::string& path, const Eigen::VectorXd& v) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "index,mu\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << i << ',' << v(i) << '\n';
}

Outcome cmd_solve(const RunConfig& c) {
  const auto meshes = resolve_meshes(c, false);
  if (meshes.size() != 1) throw UsageError("solve takes a single space");
  const auto& space = meshes.front();
  const Kernel kernel = require_kernel(c);
  const Datum datum = parse_datum(c.datum);
  const auto orders = parse_orders(c.bootstrap_orders);
  Outcome o;
  o.config = {{"space", c.space},
              {"kernel", c.kernel},
              {"g", datum.to_string()},
              {"no_scale", c.no_scale},
              {"target_norm", number(c.target_norm)},
              {"residual_tol", number(c.residual_tol)},
              {"neumann_tol", number(c.neumann_tol)},
              {"max_terms", c.max_terms},
              {"bootstrap_orders", orders},
              {"dump_mu", c.dump_mu}};

  const NystromSystem raw = NystromSystem::assemble(space, kernel);
  double lambda = 1.0;
  if (!c.no_scale && raw.row_sum_norm() > 0.0) lambda = normalize_to(raw, c.target_norm);
  const NystromSystem sys = lambda == 1.0 ? raw : raw.scaled(lambda);
  o.result["system"] = {{"label", space->label()},
                        {"n", sys.size()},
                        {"unscaled_row_sum_norm", number(raw.row_sum_norm())},
                        {"lambda", number(lambda)},
                        {"row_sum_norm", number(sys.row_sum_norm())}};

  const Eigen::VectorXd g = evaluate_datum(datum, *space);
  DirectSolveOptions direct_options;
  direct_options.residual_tolerance = c.residual_tol;
  SolveReport direct;
  try {
    direct = solve_direct(sys, g, direct_options);
  } catch (const SolveError& e) {
    o.result["direct"] = {{"error", e.what()}};
    o.passed = false;
    return o;
  }
  o.result["direct"] = to_json(direct, false);

  try {
    const SolveReport neumann = solve_neumann(sys, g, c.neumann_tol, c.max_terms);
    Json n = to_json(neumann, false);
    n["max_diff_to_direct"] = number((neumann.mu - direct.mu).cwiseAbs().maxCoeff());
    o.result["neumann"] = n;
  } catch (const SolveError& e) {
    o.result["neumann"] = {{"refused", e.what()}};
  }

  Json boot = Json::array();
  for (int r : orders) {
    const BootstrapCheck b = verify_bootstrap(sys, direct.mu, g, r);
    boot.push_back(to_json(b));
    o.passed = o.passed && b.within_budget;
  }
  o.result["bootstrap"] = boot;
  if (!c.dump_mu.empty()) dump_vector(c.dump_mu, direct.mu);
  return o;
}

Outcome cmd_experiment(const RunConfig& c) {
  if (c.mode != "holder" && c.mode != "improved" && c.mode != "continuity")
    throw UsageError("--mode must be holder, improved or continuity");
  const auto meshes = resolve_meshes(c, true);
  ExperimentSetup setup;
  setup.meshes = meshes;
  setup.kernel = constant_kernel_factory(require_kernel(c));
  setup.datum = parse_datum(c.datum);
  if (c.no_scale) {
    setup.target_norm.reset();
  } else {
    setup.target_norm = c.target_norm;
  }
  Outcome o;
  o.config = {{"mode", c.mode},
              {"space", c.space},
              {"meshes", mesh_labels(meshes)},
              {"kernel", c.kernel},
              {"g", setup.datum.to_string()},
              {"class", c.class_spec},
              {"theta", number(c.theta)},
              {"beta", opt(c.beta)},
              {"strong", c.strong},
              {"no_scale", c.no_scale},
              {"target_norm", number(c.target_norm)},
              {"growth_limit", number(c.growth_limit)},
              {"stability_factor", number(c.stability_factor)},
              {"max_jump_ratio", number(c.max_jump_ratio)},
              {"class_check", !c.no_class_check},
              {"seed", c.seed}};

  if (c.mode == "continuity") {
    const ContinuityReport r = run_continuity_experiment(setup, c.max_jump_ratio);
    o.result = to_json(r);
    o.passed = r.passed;
    return o;
  }
  if (c.class_spec.empty()) throw UsageError("--class is required for holder experiments");
  const KernelClass k = parse_class_spec(c.class_spec);
  ClassParameters params;
  params.s1 = k.s1;
  params.s2 = k.s2;
  params.s3 = k.s3;
  params.upsilon = k.upsilon;
  params.theta = c.theta;
  params.beta = c.beta;
  params.strong_regular = c.strong;
  HolderExperimentOptions options;
  options.growth_limit = c.growth_limit;
  options.class_stability_factor = c.stability_factor;
  options.check_class = !c.no_class_check;
  options.seminorm.seed = c.seed;
  try {
    const RegularityExperimentReport r = c.mode == "holder"
                                             ? run_holder_experiment(setup, params, options)
                                             : run_improved_holder_experiment(setup, params, options);
    o.result = to_json(r);
    o.passed = r.passed;
  } catch (const HypothesisError& e) {
    Json measured = Json::array();
    for (double v : e.measured()) measured.push_back(number(v));
    o.result = {{"refused", e.what()}, {"measured", measured}, {"passed", false}};
    o.passed = false;
  }
  return o;
}

Outcome cmd_verify_bounds(const RunConfig& c) {
  if (!c.s) throw UsageError("--s is required");
  const auto meshes = resolve_meshes(c, false);
  const double s = *c.s;
  Outcome o;
  o.config = {{"space", c.space},
              {"meshes", mesh_labels(meshes)},
              {"upsilon", number(c.upsilon)},
              {"s", number(s)},
              {"a", c.a},
              {"c_upper", opt(c.c_upper)},
              {"r_cutoff", opt(c.r_cutoff)},
              {"s2", opt(c.s2)},
              {"pairs", c.pairs},
              {"strong", c.strong},
              {"stability_factor", number(c.stability_factor)},
              {"seed", c.seed}};

  Json per_mesh = Json::array();
  std::vector<double> localized;
  std::vector<double> composite;
  for (const auto& mp : meshes) {
    const SampledMeasureSpace& space = *mp;
    Json m;
    m["label"] = space.label();
    m["n"] = space.size();
    double c_upper = 0.0;
    if (c.c_upper) {
      c_upper = *c.c_upper;
    } else {
      AhlforsOptions options;
      options.r_cutoff = c.r_cutoff;
      c_upper = estimate_upper_ahlfors(space, c.upsilon, default_radius_grid(space), options).c_upper;
    }
    m["c_upper"] = number(c_upper);
    Json balls = Json::array();
    if (s < c.upsilon) {
      for (double a : c.a) {
        const RieszBoundReport b = verify_ball_bound(space, c.upsilon, s, a, c_upper, c.r_cutoff);
        Json bj = to_json(b);
        bj["a"] = number(a);
        balls.push_back(bj);
        o.passed = o.passed && b.passed;
      }
    }
    m["ball_bounds"] = balls;
    const int cmp = compare_exponent(s, c.upsilon);
    const auto grid = scale_grid(space, cmp == 0 ? 0.35 : 1.0);
    const RieszBoundReport loc = verify_localized_bounds(
        space, c.upsilon, s, grid, cmp < 0 ? std::optional<double>(c_upper) : std::nullopt);
    m["localized"] = to_json(loc);
    localized.push_back(loc.measured_sup);
    if (cmp < 0 && loc.bound_value) o.passed = o.passed && loc.passed;
    if (c.s2) {
      const auto pairs = sample_pairs(space, c.pairs, c.seed);
      const RieszBoundReport comp = composite_integral_check(space, c.upsilon, s, *c.s2, pairs, c.strong);
      m["composite"] = to_json(comp);
      composite.push_back(comp.measured_sup);
    }
    per_mesh.push_back(m);
  }
  o.result["meshes"] = per_mesh;
  const auto stability = [&](const std::vector<double>& v) {
    Json ratios = Json::array();
    bool stable = true;
    for (std::size_t k = 1; k < v.size(); ++k) {
      ratios.push_back(number(v[k - 1] > 0.0 ? v[k] / v[k - 1] : 0.0));
      stable = stable && mesh_stable(v[k - 1], v[k], c.stability_factor);
    }
    o.passed = o.passed && stable;
    return Json{{"ratios", ratios}, {"stable", stable}};
  };
  if (meshes.size() > 1) {
    o.result["localized_stability"] = stability(localized);
    if (c.s2) o.result["composite_stability"] = stability(composite);
  }
  return o;
}

Outcome cmd_seminorm(const RunConfig& c) {
  const auto meshes = resolve_meshes(c, false);
  if (meshes.size() != 1) throw UsageError("seminorm takes a single space");
  const auto& space = meshes.front();
  const Datum datum = parse_datum(c.datum);
  const Modulus modulus = parse_modulus(c.modulus);
  Outcome o;
  o.config = {{"space", c.space},
              {"g", datum.to_string()},
              {"kernel", c.kernel},
              {"class", c.class_spec},
              {"modulus", modulus.to_string()},
              {"min_dist", opt(c.min_dist)},
              {"a", opt(c.restricted_a)},
              {"no_scale", c.no_scale},
              {"target_norm", number(c.target_norm)},
              {"seed", c.seed}};

  const ModulusCheck check = check_modulus_conditions(modulus, modulus_t_grid());
  o.result["modulus_check"] = to_json(check);
  if (!check.passed) {
    o.passed = false;
    return o;
  }
  Eigen::VectorXd f = evaluate_datum(datum, *space);
  if (!c.kernel.empty()) {
    const Kernel kernel = parse_kernel_spec(c.kernel);
    const NystromSystem raw = NystromSystem::assemble(space, kernel);
    double lambda = 1.0;
    if (!c.no_scale && raw.row_sum_norm() > 0.0) lambda = normalize_to(raw, c.target_norm);
    const SolveReport solve = solve_direct(lambda == 1.0 ? raw : raw.scaled(lambda), f);
    f = solve.mu;
    o.result["function"] = "solution";
    o.result["lambda"] = number(lambda);
    o.result["residual_inf"] = number(solve.residual_inf);
    if (!c.class_spec.empty()) {
      const KernelClass k = parse_class_spec(c.class_spec);
      SeminormOptions options;
      options.seed = c.seed;
      o.result["class_membership"] =
          to_json(class_membership_report(Kernel::scaled(kernel, lambda), *space, k.s1, k.s2, k.s3, options));
    }
  } else {
    o.result["function"] = "datum";
  }
  o.result["holder"] = to_json(holder_seminorm(f, *space, modulus, c.min_dist));
  if (c.restricted_a) {
    const RestrictedBoundCheck bound = check_restricted_bound(f, *space, modulus, *c.restricted_a);
    o.result["restricted_bound"] = to_json(bound);
    o.passed = bound.passed;
  }
  return o;
}

void add_space(CLI::App* cmd, RunConfig& c, bool required) {
  auto* opt = cmd->add_option("--space", c.space,
                              "circle[:n[:r]], cantor[:level], interval[:n[:density]], file:path");
  if (required) opt->required();
}

void add_scaling(CLI::App* cmd, RunConfig& c) {
  cmd->add_flag("--no-scale", c.no_scale, "use the kernel as given");
  cmd->add_option("--target-norm", c.target_norm, "row-sum norm after scaling")->capture_default_str();
}

void write_report(const RunConfig& c, const Outcome& o, std::ostream& out) {
  Json report;
  report["tool"] = "uareg";
  report["version"] = std::string(kVersion);
  report["command"] = c.command;
  report["config"] = o.config;
  report["seed"] = c.seed;
  report["result"] = o.result;
  report["passed"] = o.passed;
  const std::string text = report.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + c.out + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Weakly singular Fredholm equations on upper Ahlfors regular sets", "uareg"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.add_option("--seed", c.seed, "seed for sampled pairs and subsampling")->capture_default_str();
  app.add_option("--out", c.out, "write the report to this file");

  auto* ahl = app.add_subcommand("check-ahlfors", "estimate upper Ahlfors regularity constants");
  add_space(ahl, c, true);
  ahl->add_option("--upsilon", c.upsilon)->capture_default_str();
  ahl->add_flag("--strong", c.strong, "also estimate the annulus constant");
  ahl->add_option("--ceiling", c.ceiling, "fail when the constant exceeds this");
  ahl->add_option("--r-cutoff", c.r_cutoff, "largest radius considered");
  ahl->add_option("--min-annulus-width", c.min_annulus_width);
  ahl->add_option("--grid-min", c.grid_min);
  ahl->add_option("--grid-max", c.grid_max);
  ahl->add_option("--grid-ratio", c.grid_ratio)->capture_default_str();

  auto* comp = app.add_subcommand("compose-class", "compose kernel classes symbolically");
  comp->add_option("tokens", c.tokens, "class:s1,s2,s3@u split:a,b t1:t")->required();
  comp->add_flag("--strong", c.strong, "the space is strongly upper Ahlfors regular");
  comp->add_option("--epsilon", c.epsilon)->capture_default_str();

  auto* solve = app.add_subcommand("solve", "solve mu - A[K,mu] = g");
  add_space(solve, c, true);
  solve->add_option("--kernel", c.kernel)->required();
  solve->add_option("--g", c.datum, "const:c, coord:k, distpow:t[@i], step:k[:c]")->capture_default_str();
  add_scaling(solve, c);
  solve->add_option("--residual-tol", c.residual_tol)->capture_default_str();
  solve->add_option("--neumann-tol", c.neumann_tol)->capture_default_str();
  solve->add_option("--max-terms", c.max_terms)->capture_default_str();
  solve->add_option("--bootstrap", c.bootstrap_orders, "orders r to check")->capture_default_str();
  solve->add_option("--dump-mu", c.dump_mu, "CSV file for the solution");

  auto* exp = app.add_subcommand("experiment", "multi-mesh regularity experiment");
  exp->add_option("--mode", c.mode, "holder, improved or continuity")->capture_default_str();
  add_space(exp, c, true);
  exp->add_option("--meshes", c.meshes, "comma-separated sizes (levels for cantor)")->required();
  exp->add_option("--kernel", c.kernel)->required();
  exp->add_option("--g", c.datum)->capture_default_str();
  exp->add_option("--class", c.class_spec, "class:s1,s2,s3@u");
  exp->add_option("--theta", c.theta)->capture_default_str();
  exp->add_option("--beta", c.beta);
  exp->add_flag("--strong", c.strong);
  add_scaling(exp, c);
  exp->add_option("--growth-limit", c.growth_limit)->capture_default_str();
  exp->add_option("--stability-factor", c.stability_factor)->capture_default_str();
  exp->add_option("--max-jump-ratio", c.max_jump_ratio)->capture_default_str();
  exp->add_flag("--no-class-check", c.no_class_check);

  auto* vb = app.add_subcommand("verify-bounds", "check Riesz integral bounds");
  add_space(vb, c, true);
  vb->add_option("--meshes", c.meshes);
  vb->add_option("--upsilon", c.upsilon)->capture_default_str();
  vb->add_option("--s", c.s)->required();
  vb->add_option("--a", c.a, "ball radii for the whole-space bound")->delimiter(',');
  vb->add_option("--c-upper", c.c_upper);
  vb->add_option("--r-cutoff", c.r_cutoff);
  vb->add_option("--s2", c.s2, "second exponent of the composite integral");
  vb->add_option("--pairs", c.pairs)->capture_default_str();
  vb->add_flag("--strong", c.strong);
  vb->add_option("--stability-factor", c.stability_factor)->capture_default_str();

  auto* sn = app.add_subcommand("seminorm", "Hoelder seminorm of a datum or a solution");
  add_space(sn, c, true);
  sn->add_option("--g", c.datum)->capture_default_str();
  sn->add_option("--kernel", c.kernel, "solve first and measure the solution");
  sn->add_option("--class", c.class_spec, "also report the kernel's class seminorms");
  sn->add_option("--modulus", c.modulus)->capture_default_str();
  sn->add_option("--min-dist", c.min_dist);
  sn->add_option("--a", c.restricted_a, "check the restricted sup bound at this scale");
  add_scaling(sn, c);

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--seed", c.seed)->capture_default_str();
    sub->add_option("--out", c.out);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    Outcome o;
    c.command = app.get_subcommands().front()->get_name();
    if (c.command == "check-ahlfors") o = cmd_check_ahlfors(c);
    else if (c.command == "compose-class") o = cmd_compose_class(c);
    else if (c.command == "solve") o = cmd_solve(c);
    else if (c.command == "experiment") o = cmd_experiment(c);
    else if (c.command == "verify-bounds") o = cmd_verify_bounds(c);
    else o = cmd_seminorm(c);
    write_report(c, o, out);
    if (!o.passed) err << c.command << ": check failed\n";
    return o.passed ? kExitPass : kExitCheckFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}

}  // namespace uareg::cli
