// One PASS/FAIL line per acceptance criterion; nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uareg/ahlfors.hpp"
#include "uareg/class_calculus.hpp"
#include "uareg/errors.hpp"
#include "uareg/kernels.hpp"
#include "uareg/modulus.hpp"
#include "uareg/nystrom.hpp"
#include "uareg/regularity.hpp"
#include "uareg/sampled_space.hpp"

#if UAREG_WITH_CLI
#include "cli/cli.hpp"
#endif

using namespace uareg;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::shared_ptr<const SampledMeasureSpace> circle(std::size_t n) {
  return std::make_shared<const SampledMeasureSpace>(build_circle(n));
}

double spread(const std::vector<double>& v) {
  double lo = v.front(), hi = v.front();
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return lo > 0.0 ? hi / lo : INFINITY;
}

Outcome bootstrap_identity() {
  Outcome o;
  const auto sp = circle(200);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd table(200, 200);
  for (Eigen::Index i = 0; i < 200; ++i)
    for (Eigen::Index j = 0; j < 200; ++j) table(i, j) = u(rng);
  Eigen::VectorXd g(200);
  for (auto& v : g) v = u(rng);
  const auto base = NystromSystem::assemble(sp, Kernel::tabulated(table, sp->label()));
  const auto sys = base.scaled(normalize_to(base, 0.5));
  const auto mu = solve_direct(sys, g).mu;
  double worst = 0.0;
  for (int r : {1, 2, 5}) worst = std::max(worst, verify_bootstrap(sys, mu, g, r).relative);
  o.require(worst <= 1e-10, "relative deviation " + fmt(worst));
  o.detail = o.ok ? "max relative deviation " + fmt(worst) : o.detail;
  return o;
}

Outcome nine_cases() {
  Outcome o;
  struct Golden {
    double s1, t1, s2p, s2pp, s3;
    double e1, e2, e3;
    const char* label;
  };
  const double eps = kDefaultEpsilon;
  const Golden goldens[] = {
      {0.2, 0.3, 0.4, 0.3, 0.5, 0.0, 0.3, 0.2, "(i)"},
      {0.2, 0.3, 0.7, 0.1, 0.5, 0.0, 0.3, 0.4, "(ii)"},
      {0.2, 0.3, 0.9, 0.2, 0.6, 0.0, 0.3, 0.4, "(iii)"},
      {0.4, 0.6, 0.3, 0.1, 0.5, eps, 0.6, 0.4, "(iv)"},
      {0.4, 0.6, 0.4, 0.0, 0.3, eps, 0.6, 0.3, "(v)"},
      {0.4, 0.6, 0.7, 0.2, 0.5, eps, 0.6, 0.3, "(vi)"},
      {0.7, 0.5, 0.2, 0.1, 0.4, 0.2, 0.7, 0.3, "(vii)"},
      {0.7, 0.5, 0.5, 0.25, 0.5, 0.2, 0.7, 0.25, "(viii)"},
      {0.6, 0.6, 0.8, 0.2, 1.0, 0.2, 0.6, 0.4, "(ix)"},
  };
  for (const auto& gd : goldens) {
    KernelClass k;
    k.s1 = gd.s1;
    k.s2 = gd.s2p + gd.s2pp;
    k.s3 = gd.s3;
    const auto r = compose_general(k, {gd.s2p, gd.s2pp}, gd.t1, true);
    const bool match = r.case_label == gd.label && std::abs(r.cls.s1 - gd.e1) < 1e-12 &&
                       std::abs(r.cls.s2 - gd.e2) < 1e-12 && std::abs(r.cls.s3 - gd.e3) < 1e-12;
    o.require(match, std::string("golden ") + gd.label + " gave " + r.case_label);
  }

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> lattice(0, 20);
  int samples = 0;
  bool seen[9] = {};
  while (samples < 10000) {
    const int s1 = lattice(rng), t1 = lattice(rng), s2p = lattice(rng), s2pp = lattice(rng),
              s3 = lattice(rng);
    if (s1 >= 20 || t1 == 0 || s3 == 0 || s2pp > s3) continue;
    KernelClass k;
    k.s1 = s1 / 20.0;
    k.s2 = (s2p + s2pp) / 20.0;
    k.s3 = s3 / 20.0;
    GeneralComposition r;
    try {
      r = compose_general(k, {s2p / 20.0, s2pp / 20.0}, t1 / 20.0, true);
    } catch (const InvalidArgument&) {
      continue;
    }
    ++samples;
    const int a = (s1 + t1 > 20) - (s1 + t1 < 20);
    const int b = (s2p + t1 > 20) - (s2p + t1 < 20);
    const int expected = 3 * (a + 1) + (b + 1) + 1;
    if (r.case_index != expected) {
      o.require(false, "sample fired " + r.case_label + " expected index " + std::to_string(expected));
      break;
    }
    seen[expected - 1] = true;
  }
  for (int c = 0; c < 9; ++c) o.require(seen[c], "case " + roman_numeral(c + 1) + " never sampled");
  if (o.ok) o.detail = "9 goldens, " + std::to_string(samples) + " random inputs";
  return o;
}

double near_diagonal_max(const Eigen::MatrixXd& t, const SampledMeasureSpace& sp) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      if (i != j && sp.distance(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) <= 4 * sp.mesh())
        out = std::max(out, std::abs(t(i, j)));
  return out;
}

Outcome smoothing() {
  Outcome o;
  const struct {
    double s, u;
    int r;
  } table[] = {{0.0, 1.0, 2}, {0.5, 1.0, 3}, {0.6, 1.0, 3}, {0.75, 1.0, 5}, {1.0, 2.0, 3}};
  for (const auto& row : table) {
    const int got = smoothing_order(row.s, row.u);
    o.require(got == row.r, "order(" + fmt(row.s) + "," + fmt(row.u) + ") = " + std::to_string(got));
  }
  std::vector<double> sups;
  for (std::size_t n : {128u, 256u}) {
    const auto sp = circle(n);
    const auto sys = NystromSystem::assemble(sp, Kernel::riesz(0.6));
    const auto t = tabulate(iterate_kernel(sys, 3), *sp);
    const double m = near_diagonal_max(t, *sp);
    o.require(std::isfinite(m), "K^(3) not finite at n=" + std::to_string(n));
    sups.push_back(m);
  }
  const double f = spread(sups);
  o.require(f < 2.0, "K^(3) near-diagonal factor " + fmt(f));
  if (o.ok) o.detail = "K^(3) near-diagonal max " + fmt(sups[0]) + " -> " + fmt(sups[1]);
  return o;
}

Outcome integral_bounds() {
  Outcome o;
  const auto c = build_circle(512);
  const double cu = estimate_upper_ahlfors(c, 1.0, default_radius_grid(c)).c_upper;
  for (double s : {0.25, 0.5, 0.75})
    for (double a : {0.25, 0.5, 1.0})
      o.require(verify_ball_bound(c, 1.0, s, a, cu).passed, "circle ball bound s=" + fmt(s) + " a=" + fmt(a));

  const double dim = std::log(2.0) / std::log(3.0);
  const auto k = build_cantor(8);
  const double ck = estimate_upper_ahlfors(k, dim, default_radius_grid(k)).c_upper;
  for (double a : {1.0 / 9.0, 1.0 / 3.0})
    o.require(verify_ball_bound(k, dim, dim / 2, a, ck).passed, "cantor ball bound a=" + fmt(a));

  const auto c256 = build_circle(256);
  const auto grid = [](double hi) { return geometric_grid(2 * build_circle(256).mesh(), hi); };
  const struct {
    double s, hi;
    BoundKind kind;
  } kinds[] = {{0.5, 0.5, BoundKind::ball}, {2.0, 0.5, BoundKind::complement_power}, {1.0, 0.35, BoundKind::complement_log}};
  std::string summary;
  for (const auto& kd : kinds) {
    const auto g = grid(kd.hi);
    const auto coarse = verify_localized_bounds(c256, 1.0, kd.s, g);
    const auto fine = verify_localized_bounds(c, 1.0, kd.s, g);
    o.require(fine.kind == kd.kind, "kind for s=" + fmt(kd.s));
    const std::string trace = std::string(bound_kind_name(kd.kind)) + " " + fmt(coarse.measured_sup) +
                              " -> " + fmt(fine.measured_sup);
    o.require(mesh_stable(coarse.measured_sup, fine.measured_sup, 2.0), trace);
    summary += (summary.empty() ? "" : ", ") + trace;
  }
  if (o.ok) o.detail = "12 ball bounds; " + summary;
  return o;
}

Outcome composite_shape() {
  Outcome o;
  const double shapes[][2] = {{0.3, 0.3}, {0.5, 0.5}, {0.6, 0.6}};
  std::string summary;
  for (const auto& sh : shapes) {
    std::vector<double> sups;
    for (std::size_t n : {128u, 256u, 512u}) {
      const auto c = build_circle(n);
      const auto pairs = sample_pairs(c, 20000, 1);
      sups.push_back(composite_integral_check(c, 1.0, sh[0], sh[1], pairs, true).measured_sup);
    }
    const double f = spread(sups);
    o.require(f < 2.0, "(" + fmt(sh[0]) + "," + fmt(sh[1]) + ") factor " + fmt(f));
    summary += (summary.empty() ? "" : ", ") + fmt(f);
  }
  if (o.ok) o.detail = "mesh factors " + summary;
  return o;
}

Outcome ahlfors_estimators() {
  Outcome o;
  const auto c = build_circle(512);
  const double cu = estimate_upper_ahlfors(c, 1.0, default_radius_grid(c)).c_upper;
  o.require(cu >= 2.0 && cu <= M_PI + 0.1, "circle c_upper " + fmt(cu));

  const auto cusp = build_weighted_interval(1000, Density::exp_cusp);
  const auto grid = default_radius_grid(cusp);
  const double cc = estimate_upper_ahlfors(cusp, 1.0, grid).c_upper;
  o.require(cc <= 1.0 + 2.0 * cusp.mesh(), "exp_cusp ratio " + fmt(cc));
  const double dbl = doubling_ratio(cusp, 0, grid);
  o.require(dbl > 100.0, "exp_cusp doubling " + fmt(dbl));

  const auto atom = SampledMeasureSpace::from_points({0.0}, 1, {1.0}, "atom");
  const auto ar = estimate_upper_ahlfors(atom, 1.0, default_radius_grid(atom));
  o.require(ar.small_scale_blowup, "point mass not flagged");
  if (o.ok) o.detail = "circle " + fmt(cu) + ", cusp " + fmt(cc) + ", doubling " + fmt(dbl);
  return o;
}

Outcome holder_experiment() {
  Outcome o;
  ExperimentSetup setup;
  for (std::size_t n : {128u, 256u, 512u}) setup.meshes.push_back(circle(n));
  setup.kernel = constant_kernel_factory(Kernel::riesz(0.5));
  setup.datum = parse_datum("distpow:0.5");
  ClassParameters p;
  p.s1 = 0.5;
  p.s2 = 1.5;
  p.s3 = 1.0;
  p.theta = 0.5;
  const auto r = run_holder_experiment(setup, p);
  double worst = 0.0;
  for (double g : r.growth_ratios) worst = std::max(worst, g);
  o.require(r.passed && worst <= 1.25, "growth " + fmt(worst));
  o.require(r.predicted_modulus.find("r^0.5") != std::string::npos, "predicted " + r.predicted_modulus);

  setup.datum = parse_datum("step:0");
  const auto neg = run_holder_experiment(setup, p);
  o.require(!neg.passed, "step datum passed");
  if (o.ok) o.detail = "growth " + fmt(worst) + ", step control fails";
  return o;
}

Outcome modulus_conditions() {
  Outcome o;
  const auto grid = modulus_t_grid();
  for (double b : {0.25, 0.5, 1.0}) {
    const auto c = check_modulus_conditions(Modulus::power(b), grid);
    o.require(c.passed && c.sup_ratio <= 1.0 + 1e-12, "power(" + fmt(b) + ")");
  }
  for (double t : {0.25, 0.5, 1.0})
    o.require(check_modulus_conditions(Modulus::log_power(t), grid).passed, "omega_theta(" + fmt(t) + ")");
  const auto sq = check_modulus_conditions(Modulus::power(2.0), grid);
  o.require(!sq.passed, "power(2) passed");
  bool linear = true;
  for (const auto& [a, r] : sq.ratio_by_a) linear = linear && std::abs(r / a - 1.0) < 1e-9;
  o.require(linear, "power(2) ratio not linear in a");

  const auto sp = build_circle(128);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd f(128);
    for (auto& v : f) v = u(rng);
    ok += check_restricted_bound(f, sp, Modulus::power(0.5), 0.2).passed;
  }
  o.require(ok == 100, "restricted bound held for " + std::to_string(ok) + "/100");
  if (o.ok) o.detail = "power(2) ratio at a=1e4: " + fmt(sq.ratio_by_a.back().second) + "; 100/100 restricted bounds";
  return o;
}

Outcome determinism() {
  Outcome o;
#if UAREG_WITH_CLI
  const std::vector<std::vector<std::string>> runs = {
      {"check-ahlfors", "--space", "circle:256", "--strong", "--r-cutoff", "1.4", "--seed", "3"},
      {"compose-class", "class:0.6,1.0,1@1", "split:0.8,0.2", "t1:0.6"},
      {"solve", "--space", "circle:200", "--kernel", "riesz:0.5", "--g", "coord:0", "--seed", "5"},
      {"verify-bounds", "--space", "circle", "--meshes", "128,256", "--s", "0.3", "--s2", "0.3", "--pairs",
       "2000", "--seed", "11"},
      {"experiment", "--space", "circle", "--meshes", "64,128", "--kernel", "riesz:0.5", "--class",
       "class:0.5,1.5,1@1", "--g", "distpow:0.5", "--seed", "13"},
      {"seminorm", "--space", "circle:256", "--g", "distpow:0.5", "--kernel", "riesz:0.5", "--seed", "17"},
  };
  for (const char* workers : {"1", "3"}) {
    ::setenv("UAREG_WORKERS", workers, 1);
    for (const auto& args : runs) {
      std::ostringstream a, b, ea, eb;
      const int ca = cli::run(args, a, ea);
      const int cb = cli::run(args, b, eb);
      o.require(ca == cb && a.str() == b.str() && !a.str().empty(),
                args.front() + " not reproducible with " + workers + " workers");
    }
  }
  ::unsetenv("UAREG_WORKERS");
  if (o.ok) o.detail = std::to_string(runs.size()) + " commands byte-identical at 1 and 3 workers";
#else
  o.require(false, "built without the command-line tool");
#endif
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "bootstrap identity", 5.0, bootstrap_identity},
      {2, "nine-case class calculus", 1.0, nine_cases},
      {3, "smoothing order", 30.0, smoothing},
      {4, "integral bounds", 30.0, integral_bounds},
      {5, "composite-integral shape", 60.0, composite_shape},
      {6, "Ahlfors estimators", 10.0, ahlfors_estimators},
      {7, "Hoelder experiment", 60.0, holder_experiment},
      {8, "modulus conditions", 5.0, modulus_conditions},
      {9, "determinism", 60.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.ok = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("over budget");
    }
    std::printf("%s %d %s (%.2fs / %.0fs) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                o.detail.c_str());
    failures += !o.ok;
  }
  return failures ? 1 : 0;
}
