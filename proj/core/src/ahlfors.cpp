#include "uareg/ahlfors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "uareg/errors.hpp"
#include "uareg/numeric.hpp"
#include "uareg/parallel.hpp"

namespace uareg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_index(const SampledMeasureSpace& space, std::size_t i) {
  if (i >= space.size())
    throw InvalidArgument("node index " + std::to_string(i) + " out of range");
}

std::vector<double> validated_grid(std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("radius grid is empty");
  std::vector<double> g(grid.begin(), grid.end());
  for (double r : g)
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("grid radii must be positive");
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

// Distances from one node sorted ascending with compensated prefix masses,
// so that nu(B(x, r)) = prefix[#{d < r}].
struct SortedProfile {
  std::vector<double> dist;
  std::vector<double> prefix_mass;  // size n + 1

  SortedProfile(const SampledMeasureSpace& space, std::size_t x) {
    const std::size_t n = space.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return space.distance(x, a) < space.distance(x, b);
    });
    dist.resize(n);
    prefix_mass.resize(n + 1);
    CompensatedSum acc;
    prefix_mass[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      dist[k] = space.distance(x, order[k]);
      acc.add(space.weight(order[k]));
      prefix_mass[k + 1] = acc.value();
    }
  }

  double ball(double r) const {
    const auto count = std::lower_bound(dist.begin(), dist.end(), r) - dist.begin();
    return prefix_mass[static_cast<std::size_t>(count)];
  }
};

struct RatioTable {
  std::vector<double> grid;
  std::vector<std::vector<double>> mass;  // [node][grid index]
};

RatioTable ball_table(const SampledMeasureSpace& space, std::span<const double> grid) {
  RatioTable t;
  t.grid = validated_grid(grid);
  t.mass.resize(space.size());
  parallel_for(space.size(), [&](std::size_t x) {
    SortedProfile profile(space, x);
    auto& row = t.mass[x];
    row.resize(t.grid.size());
    for (std::size_t k = 0; k < t.grid.size(); ++k) row[k] = profile.ball(t.grid[k]);
  });
  return t;
}

AhlforsReport upper_from_table(const SampledMeasureSpace& space, double upsilon,
                               const RatioTable& table, const AhlforsOptions& options) {
  AhlforsReport report;
  report.upsilon = upsilon;
  const std::size_t n = space.size();
  const auto& grid = table.grid;
  const double max_grid = grid.back();
  report.r_cutoff = options.r_cutoff.value_or(space.diameter() > 0.0 ? space.diameter() : max_grid);
  report.ceiling = options.ceiling.value_or(kInf);

  std::vector<double> powers(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) powers[k] = std::pow(grid[k], upsilon);

  std::vector<double> sup_by_radius(grid.size(), 0.0);
  std::vector<WorstPair> all;
  all.reserve(n * grid.size());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double ratio = table.mass[x][k] / powers[k];
      sup_by_radius[k] = std::max(sup_by_radius[k], ratio);
      all.push_back({x, grid[k], ratio});
    }
  }
  report.c_upper = *std::max_element(sup_by_radius.begin(), sup_by_radius.end());

  const std::size_t keep = std::min<std::size_t>(10, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    [](const WorstPair& a, const WorstPair& b) {
                      if (a.ratio != b.ratio) return a.ratio > b.ratio;
                      if (a.node != b.node) return a.node < b.node;
                      return a.radius < b.radius;
                    });
  all.resize(keep);
  report.worst_pairs = std::move(all);

  const double coarse_from = grid.front() * std::max(2.0, std::pow(2.0, 1.0 / upsilon));
  double coarse_sup = 0.0;
  bool have_coarse = false;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid[k] >= coarse_from) {
      coarse_sup = std::max(coarse_sup, sup_by_radius[k]);
      have_coarse = true;
    }
  }
  report.small_scale_blowup = have_coarse && sup_by_radius.front() == report.c_upper &&
                              sup_by_radius.front() > 1.5 * coarse_sup;
  report.passed = !report.small_scale_blowup && report.c_upper <= report.ceiling;
  return report;
}

void check_upsilon(double upsilon) {
  if (!(upsilon > 0.0) || !std::isfinite(upsilon))
    throw InvalidArgument("upsilon must be positive");
}

}  // namespace

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
    throw InvalidArgument("geometric_grid needs 0 < lo <= hi");
  if (!(ratio > 1.0)) throw InvalidArgument("geometric_grid needs ratio > 1");
  std::vector<double> g;
  for (double r = lo; r < hi * (1.0 - 1e-12); r *= ratio) g.push_back(r);
  g.push_back(hi);
  return g;
}

std::vector<double> default_radius_grid(const SampledMeasureSpace& space) {
  if (space.mesh() <= 0.0) return geometric_grid(1e-3, 1.0);
  return geometric_grid(space.mesh(), space.diameter());
}

double ball_measure(const SampledMeasureSpace& space, std::size_t center, double r) {
  check_index(space, center);
  if (!(r > 0.0)) throw InvalidArgument("ball radius must be positive");
  CompensatedSum acc;
  for (std::size_t j = 0; j < space.size(); ++j)
    if (space.distance(center, j) < r) acc.add(space.weight(j));
  return acc.value();
}

double annulus_measure(const SampledMeasureSpace& space, std::size_t center, double r1,
                       double r2) {
  check_index(space, center);
  if (!(r1 >= 0.0) || !(r1 < r2)) throw InvalidArgument("annulus needs 0 <= r1 < r2");
  CompensatedSum acc;
  for (std::size_t j = 0; j < space.size(); ++j) {
    const double d = space.distance(center, j);
    if (d >= r1 && d < r2) acc.add(space.weight(j));
  }
  return acc.value();
}

AhlforsReport estimate_upper_ahlfors(const SampledMeasureSpace& space, double upsilon,
                                     std::span<const double> radius_grid,
                                     const AhlforsOptions& options) {
  check_upsilon(upsilon);
  const RatioTable table = ball_table(space, radius_grid);
  return upper_from_table(space, upsilon, table, options);
}

AhlforsReport estimate_strong_upper_ahlfors(const SampledMeasureSpace& space, double upsilon,
                                            std::span<const double> radius_grid,
                                            const AhlforsOptions& options) {
  check_upsilon(upsilon);
  const RatioTable table = ball_table(space, radius_grid);
  AhlforsReport report = upper_from_table(space, upsilon, table, options);

  const auto& grid = table.grid;
  const double width = options.min_annulus_width.value_or(2.0 * space.mesh());
  std::vector<double> powers(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) powers[k] = std::pow(grid[k], upsilon);

  std::vector<double> node_sup(space.size(), 0.0);
  parallel_for(space.size(), [&](std::size_t x) {
    const auto& m = table.mass[x];
    double best = 0.0;
    for (std::size_t hi = 0; hi < grid.size(); ++hi) {
      best = std::max(best, m[hi] / powers[hi]);  // r1 = 0
      for (std::size_t lo = 0; lo < hi; ++lo) {
        if (grid[hi] - grid[lo] < width) continue;
        const double mass = std::max(0.0, m[hi] - m[lo]);
        best = std::max(best, mass / (powers[hi] - powers[lo]));
      }
    }
    node_sup[x] = best;
  });
  report.c_strong = *std::max_element(node_sup.begin(), node_sup.end());
  report.passed = !report.small_scale_blowup && *report.c_strong <= report.ceiling;
  return report;
}

double doubling_ratio(const SampledMeasureSpace& space, std::size_t center,
                      std::span<const double> radius_grid) {
  check_index(space, center);
  const auto grid = validated_grid(radius_grid);
  SortedProfile profile(space, center);
  double worst = 0.0;
  for (double r : grid) {
    const double inner = profile.ball(r);
    if (inner > 0.0) worst = std::max(worst, profile.ball(2.0 * r) / inner);
  }
  return worst;
}

double riesz_integral(const SampledMeasureSpace& space, std::size_t x, double s) {
  check_index(space, x);
  if (!(s >= 0.0)) throw InvalidArgument("riesz_integral needs s >= 0");
  CompensatedSum acc;
  for (std::size_t j = 0; j < space.size(); ++j) {
    if (j == x) continue;
    const double d = space.distance(x, j);
    if (s == 0.0) {
      acc.add(space.weight(j));
    } else if (d == 0.0) {
      if (space.weight(j) > 0.0) return kInf;
    } else {
      acc.add(space.weight(j) * std::pow(d, -s));
    }
  }
  return acc.value();
}

std::string_view bound_kind_name(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::ball: return "ball";
    case BoundKind::complement_power: return "complement_power";
    case BoundKind::complement_log: return "complement_log";
    case BoundKind::whole: return "whole";
    case BoundKind::composite: return "composite";
  }
  return "unknown";
}

RieszBoundReport verify_ball_bound(const SampledMeasureSpace& space, double upsilon, double s,
                                   double a, double c_upper, std::optional<double> r_cutoff) {
  check_upsilon(upsilon);
  if (!(s >= 0.0)) throw InvalidArgument("verify_ball_bound needs s >= 0");
  if (compare_exponent(s, upsilon) >= 0)
    throw InvalidArgument("verify_ball_bound needs s < upsilon");
  const double cutoff = r_cutoff.value_or(space.diameter());
  if (!(a > 0.0) || !(a < cutoff)) throw InvalidArgument("verify_ball_bound needs 0 < a < r_cutoff");

  std::vector<double> per_node(space.size());
  parallel_for(space.size(), [&](std::size_t x) { per_node[x] = riesz_integral(space, x, s); });

  RieszBoundReport r;
  r.s = s;
  r.kind = BoundKind::whole;
  r.measured_sup = *std::max_element(per_node.begin(), per_node.end());
  if (s == 0.0) {
    r.bound_value = space.total_mass();
  } else {
    r.bound_value = space.total_mass() * std::pow(a, -s) +
                    c_upper * upsilon / (upsilon - s) * std::pow(a, upsilon - s);
  }
  r.passed = r.measured_sup <= *r.bound_value;
  r.ratio_by_scale.push_back({a, r.measured_sup / *r.bound_value});
  return r;
}

RieszBoundReport verify_localized_bounds(const SampledMeasureSpace& space, double upsilon,
                                         double s, std::span<const double> scale_grid,
                                         std::optional<double> c_upper) {
  check_upsilon(upsilon);
  if (!std::isfinite(s)) throw InvalidArgument("exponent must be finite");
  const int cmp = compare_exponent(s, upsilon);
  RieszBoundReport r;
  r.s = s;
  r.kind = cmp < 0 ? BoundKind::ball : (cmp > 0 ? BoundKind::complement_power
                                                 : BoundKind::complement_log);
  std::vector<double> scales = validated_grid(scale_grid);
  if (r.kind == BoundKind::complement_log) {
    std::erase_if(scales, [](double t) { return !(t < std::exp(-1.0)); });
    if (scales.empty()) throw InvalidArgument("log kind needs scales in (0, 1/e)");
  }

  const std::size_t n = space.size();
  // per_node[x][k]: normalized integral of node x at scale k.
  std::vector<std::vector<double>> per_node(n, std::vector<double>(scales.size(), 0.0));
  parallel_for(n, [&](std::size_t x) {
    std::vector<std::pair<double, double>> terms;  // (distance, w d^{-s})
    terms.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == x) continue;
      const double d = space.distance(x, j);
      if (d == 0.0) {
        terms.emplace_back(0.0, space.weight(j) > 0.0 && s > 0.0 ? kInf : 0.0);
      } else {
        terms.emplace_back(d, space.weight(j) * std::pow(d, -s));
      }
    }
    std::sort(terms.begin(), terms.end());
    // prefix over nearest-first, suffix over farthest-first, both compensated
    std::vector<double> prefix(terms.size() + 1, 0.0);
    std::vector<double> suffix(terms.size() + 1, 0.0);
    CompensatedSum acc;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      acc.add(terms[k].second);
      prefix[k + 1] = acc.value();
    }
    CompensatedSum rev;
    for (std::size_t k = terms.size(); k-- > 0;) {
      rev.add(terms[k].second);
      suffix[k] = rev.value();
    }
    for (std::size_t k = 0; k < scales.size(); ++k) {
      const double t = scales[k];
      const auto inside = static_cast<std::size_t>(
          std::lower_bound(terms.begin(), terms.end(), std::make_pair(t, -kInf)) - terms.begin());
      double v = 0.0;
      switch (r.kind) {
        case BoundKind::ball: v = std::pow(t, s - upsilon) * prefix[inside]; break;
        case BoundKind::complement_power: v = std::pow(t, s - upsilon) * suffix[inside]; break;
        default: v = suffix[inside] / std::abs(std::log(t)); break;
      }
      per_node[x][k] = v;
    }
  });

  r.measured_sup = 0.0;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    double sup = 0.0;
    for (std::size_t x = 0; x < n; ++x) sup = std::max(sup, per_node[x][k]);
    r.ratio_by_scale.push_back({scales[k], sup});
    r.measured_sup = std::max(r.measured_sup, sup);
  }
  if (r.kind == BoundKind::ball && c_upper && cmp < 0)
    r.bound_value = 2.0 * *c_upper * upsilon / (upsilon - s);
  r.passed = std::isfinite(r.measured_sup) && (!r.bound_value || r.measured_sup <= *r.bound_value);
  return r;
}

std::vector<NodePair> sample_pairs(const SampledMeasureSpace& space, std::size_t count,
                                   std::uint64_t seed) {
  const std::size_t n = space.size();
  std::vector<NodePair> pairs;
  if (static_cast<double>(count) >= static_cast<double>(n) * static_cast<double>(n)) {
    pairs.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t z = 0; z < n; ++z) pairs.push_back({x, z});
    return pairs;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t x = pick(rng);
    pairs.push_back({x, pick(rng)});
  }
  return pairs;
}

RieszBoundReport composite_integral_check(const SampledMeasureSpace& space, double upsilon,
                                          double s1, double s2, std::span<const NodePair> pairs,
                                          bool strong_regular) {
  check_upsilon(upsilon);
  if (!(s1 >= 0.0) || compare_exponent(s1, upsilon) >= 0 || !(s2 >= 0.0) ||
      compare_exponent(s2, upsilon) >= 0)
    throw InvalidArgument("composite_integral_check needs s1, s2 in [0, upsilon)");
  const int branch = compare_exponent(s1 + s2, upsilon);
  if (branch == 0 && !strong_regular)
    throw InvalidArgument(
        "s1 + s2 = upsilon requires a strongly upper Ahlfors regular space");
  const std::size_t n = space.size();
  for (const auto& p : pairs) {
    check_index(space, p.x);
    check_index(space, p.z);
  }

  auto power_table = [&](double s) {
    Eigen::MatrixXd p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double d = space.distance(i, j);
        p(i, j) = i == j ? 0.0 : (d == 0.0 ? (s > 0.0 ? kInf : 1.0) : std::pow(d, -s));
      }
    return p;
  };
  const Eigen::MatrixXd p1 = power_table(s1);
  const Eigen::MatrixXd p2 = power_table(s2);
  const double exponent = upsilon - (s1 + s2);

  std::vector<double> ratio(pairs.size(), -1.0);
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [x, z] = pairs[k];
    if (branch >= 0 && x == z) return;
    const double dxz = space.distance(x, z);
    if (branch >= 0 && dxz == 0.0) return;
    CompensatedSum acc;
    for (std::size_t y = 0; y < n; ++y) {
      if (y == x || y == z) continue;
      acc.add(space.weight(y) * p1(x, y) * p2(y, z));
    }
    double shape = 1.0;
    if (branch < 0) {
      shape = 1.0 + std::pow(dxz, exponent);
    } else if (branch == 0) {
      shape = 1.0 + std::abs(std::log(dxz));
    } else {
      shape = std::pow(dxz, exponent);
    }
    ratio[k] = acc.value() / shape;
  });

  RieszBoundReport r;
  r.s = s1 + s2;
  r.kind = BoundKind::composite;
  std::size_t used = 0;
  r.measured_sup = 0.0;
  // sup per distance bin, 12 geometric bins between mesh and diameter
  const double lo = space.mesh() > 0.0 ? space.mesh() : 1.0;
  const double hi = std::max(lo, space.diameter());
  const std::size_t bins = 12;
  std::vector<double> bin_sup(bins, -1.0);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (ratio[k] < 0.0) continue;
    ++used;
    r.measured_sup = std::max(r.measured_sup, ratio[k]);
    const double d = space.distance(pairs[k].x, pairs[k].z);
    std::size_t b = 0;
    if (d > lo && hi > lo)
      b = std::min(bins - 1, static_cast<std::size_t>(std::log(d / lo) / std::log(hi / lo) *
                                                      static_cast<double>(bins)));
    bin_sup[b] = std::max(bin_sup[b], ratio[k]);
  }
  if (used == 0) throw InvalidArgument("no admissible pairs for composite_integral_check");
  for (std::size_t b = 0; b < bins; ++b) {
    if (bin_sup[b] < 0.0) continue;
    const double upper_edge = lo * std::pow(hi / lo, static_cast<double>(b + 1) / bins);
    r.ratio_by_scale.push_back({upper_edge, bin_sup[b]});
  }
  r.passed = std::isfinite(r.measured_sup);
  return r;
}

double small_set_modulus(const SampledMeasureSpace& space, double s, double mass_budget) {
  if (!(s >= 0.0)) throw InvalidArgument("small_set_modulus needs s >= 0");
  if (!(mass_budget >= 0.0) ||
      mass_budget > space.total_mass() * (1.0 + 1e-12))
    throw InvalidArgument("mass budget must lie in [0, total mass]");
  if (mass_budget == 0.0) return 0.0;
  const std::size_t n = space.size();
  std::vector<double> per_node(n, 0.0);
  parallel_for(n, [&](std::size_t x) {
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
      if (j != x) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return space.distance(x, a) < space.distance(x, b);
    });
    CompensatedSum mass;
    CompensatedSum value;
    for (std::size_t j : order) {
      const double w = space.weight(j);
      if (mass.value() + w > mass_budget * (1.0 + 1e-12)) break;
      mass.add(w);
      const double d = space.distance(x, j);
      if (w == 0.0) continue;
      value.add(s == 0.0 ? w : (d == 0.0 ? kInf : w * std::pow(d, -s)));
    }
    per_node[x] = value.value();
  });
  return *std::max_element(per_node.begin(), per_node.end());
}

ComparabilityReport check_comparability(const SampledMeasureSpace& space,
                                        std::size_t triple_budget, std::uint64_t seed) {
  ComparabilityReport rep;
  const std::size_t n = space.size();
  auto visit = [&](std::size_t a, std::size_t b, std::size_t y) {
    const double dab = space.distance(a, b);
    if (!(dab > 0.0)) return;
    const double day = space.distance(a, y);
    if (day < 2.0 * dab) return;
    ++rep.admissible_triples;
    const double dby = space.distance(b, y);
    const double slack = 1e-12 * std::max(1.0, day);
    if (dby < 0.5 * day - slack || dby > 2.0 * day + slack) ++rep.violations;
  };
  const double n3 = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
  if (n3 <= static_cast<double>(triple_budget)) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t y = 0; y < n; ++y) visit(a, b, y);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < triple_budget; ++t) {
      const std::size_t a = pick(rng);
      const std::size_t b = pick(rng);
      visit(a, b, pick(rng));
    }
  }
  return rep;
}

bool mesh_stable(double coarse, double fine, double factor) noexcept {
  if (!std::isfinite(coarse) || !std::isfinite(fine)) return false;
  if (coarse == 0.0 && fine == 0.0) return true;
  if (coarse <= 0.0 || fine <= 0.0) return false;
  return std::max(coarse / fine, fine / coarse) < factor;
}

}  // namespace uareg
