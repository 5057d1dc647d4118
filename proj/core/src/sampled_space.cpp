#include "uareg/sampled_space.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "uareg/errors.hpp"
#include "uareg/numeric.hpp"

namespace uareg {

SampledMeasureSpace SampledMeasureSpace::from_points(std::vector<double> coords,
                                                     std::size_t dimension,
                                                     std::vector<double> weights,
                                                     std::string label,
                                                     std::optional<double> total_mass,
                                                     std::size_t max_nodes) {
  const std::size_t n = weights.size();
  if (n == 0) throw InvalidArgument("sampled space needs at least one node");
  if (dimension == 0) throw InvalidArgument("ambient dimension must be positive");
  if (coords.size() != n * dimension)
    throw InvalidArgument("coordinate count does not match n * dimension");
  if (n > max_nodes)
    throw ResourceLimit("node count " + std::to_string(n) + " exceeds cap " +
                        std::to_string(max_nodes));
  for (double c : coords)
    if (!std::isfinite(c)) throw InvalidArgument("non-finite coordinate");
  for (double w : weights)
    if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("weights must be finite and >= 0");

  SampledMeasureSpace s;
  s.dimension_ = dimension;
  s.coords_ = std::move(coords);
  s.weights_ = std::move(weights);
  s.label_ = std::move(label);

  const double summed = compensated_sum(s.weights_);
  if (total_mass) {
    if (std::abs(*total_mass - summed) > 1e-12 * std::max(1.0, std::abs(summed)))
      throw InvalidArgument("declared total mass disagrees with the sum of weights");
    s.total_mass_ = *total_mass;
  } else {
    s.total_mass_ = summed;
  }

  s.dist_.setZero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  double diameter = 0.0;
  double mesh = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double* pi = s.coords_.data() + i * dimension;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* pj = s.coords_.data() + j * dimension;
      double sq = 0.0;
      for (std::size_t k = 0; k < dimension; ++k) {
        const double diff = pi[k] - pj[k];
        sq += diff * diff;
      }
      const double d = std::sqrt(sq);
      if (!std::isfinite(d)) throw InvalidArgument("non-finite distance");
      s.dist_(i, j) = d;
      s.dist_(j, i) = d;
      diameter = std::max(diameter, d);
      if (d > 0.0) mesh = std::min(mesh, d);
    }
  }
  s.diameter_ = diameter;
  s.mesh_ = std::isfinite(mesh) ? mesh : 0.0;
  return s;
}

SampledMeasureSpace build_circle(std::size_t n, double radius) {
  if (n < 3) throw InvalidArgument("build_circle needs n >= 3");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidArgument("build_circle needs a positive radius");
  std::vector<double> coords(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    coords[2 * i] = radius * std::cos(angle);
    coords[2 * i + 1] = radius * std::sin(angle);
  }
  const double length = 2.0 * std::numbers::pi * radius;
  std::vector<double> weights(n, length / static_cast<double>(n));
  std::ostringstream label;
  label << "circle:" << n << ':' << format_number(radius);
  return SampledMeasureSpace::from_points(std::move(coords), 2, std::move(weights), label.str(),
                                          length);
}

SampledMeasureSpace build_cantor(unsigned level, std::size_t max_nodes) {
  if (level > 14) throw ResourceLimit("cantor level above 14");
  const std::size_t n = std::size_t{1} << level;
  if (n > max_nodes)
    throw ResourceLimit("cantor level " + std::to_string(level) + " needs " + std::to_string(n) +
                        " nodes, above the cap " + std::to_string(max_nodes));
  // Node k has ternary expansion 0.(2 b_1)(2 b_2)... where b are the binary digits of k.
  std::vector<double> coords(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double x = 0.0;
    double scale = 1.0;
    for (unsigned digit = 0; digit < level; ++digit) {
      scale /= 3.0;
      if ((k >> (level - 1 - digit)) & 1u) x += 2.0 * scale;
    }
    coords[k] = x;
  }
  std::vector<double> weights(n, std::ldexp(1.0, -static_cast<int>(level)));
  return SampledMeasureSpace::from_points(std::move(coords), 1, std::move(weights),
                                          "cantor:" + std::to_string(level), 1.0, max_nodes);
}

Density parse_density(std::string_view name) {
  if (name == "uniform") return Density::uniform;
  if (name == "exp_cusp") return Density::exp_cusp;
  throw InvalidArgument("unknown density '" + std::string(name) + "'");
}

std::string_view density_name(Density d) noexcept {
  return d == Density::uniform ? "uniform" : "exp_cusp";
}

SampledMeasureSpace build_weighted_interval(std::size_t n, Density density) {
  if (n < 2) throw InvalidArgument("build_weighted_interval needs n >= 2");
  std::vector<double> coords(n);
  std::vector<double> weights(n);
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n - 1);
    coords[i] = x;
    double w = 1.0;
    if (density == Density::exp_cusp) w = x > 0.0 ? std::exp(-1.0 / x) : 0.0;
    weights[i] = w / nn;
  }
  return SampledMeasureSpace::from_points(
      std::move(coords), 1, std::move(weights),
      "interval:" + std::to_string(n) + ":" + std::string(density_name(density)));
}

SampledMeasureSpace build_weighted_interval(std::size_t n, std::string_view name) {
  return build_weighted_interval(n, parse_density(name));
}

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

double parse_number(const std::string& token, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + token + "'", line_no);
  }
  if (used != token.size()) throw ParseError("not a number: '" + token + "'", line_no);
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + token + "'", line_no);
  return v;
}

}  // namespace

SampledMeasureSpace read_point_cloud(std::istream& in, std::string label) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  std::size_t count = 0;
  bool have_header = false;
  std::vector<double> coords;
  std::vector<double> weights;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream row(line);
    std::vector<std::string> tokens;
    for (std::string tok; row >> tok;) tokens.push_back(tok);

    if (!have_header) {
      if (tokens.size() != 2) throw ParseError("header must be \"D n\"", line_no);
      long long d = 0;
      long long nn = 0;
      try {
        std::size_t used_d = 0;
        std::size_t used_n = 0;
        d = std::stoll(tokens[0], &used_d);
        nn = std::stoll(tokens[1], &used_n);
        if (used_d != tokens[0].size() || used_n != tokens[1].size())
          throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw ParseError("header must be two integers \"D n\"", line_no);
      }
      if (d <= 0 || nn <= 0) throw ParseError("header values must be positive", line_no);
      dim = static_cast<std::size_t>(d);
      count = static_cast<std::size_t>(nn);
      if (count > kDefaultMaxNodes)
        throw ResourceLimit("point cloud declares " + std::to_string(count) +
                            " points, above the cap");
      have_header = true;
      continue;
    }

    if (weights.size() == count) throw ParseError("more rows than declared", line_no);
    if (tokens.size() != dim + 1)
      throw ParseError("row " + std::to_string(weights.size() + 1) + " has " +
                           std::to_string(tokens.size()) + " fields, expected " +
                           std::to_string(dim + 1),
                       line_no);
    for (std::size_t k = 0; k < dim; ++k) coords.push_back(parse_number(tokens[k], line_no));
    const double w = parse_number(tokens[dim], line_no);
    if (w < 0.0)
      throw ParseError("row " + std::to_string(weights.size() + 1) + " has negative weight",
                       line_no);
    weights.push_back(w);
  }
  if (!have_header) throw ParseError("missing \"D n\" header", line_no);
  if (weights.size() != count)
    throw ParseError("expected " + std::to_string(count) + " rows, found " +
                         std::to_string(weights.size()),
                     line_no);
  return SampledMeasureSpace::from_points(std::move(coords), dim, std::move(weights),
                                          std::move(label));
}

SampledMeasureSpace load_point_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open point cloud '" + path + "'");
  return read_point_cloud(in, "file:" + path);
}

void write_point_cloud(std::ostream& out, const SampledMeasureSpace& space) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "# " << space.label() << '\n';
  out << space.dimension() << ' ' << space.size() << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (double c : space.point(i)) out << c << ' ';
    out << space.weight(i) << '\n';
  }
  out.precision(old_precision);
}

SpaceInvariantReport check_invariants(const SampledMeasureSpace& space, std::size_t triple_budget,
                                      std::uint64_t seed) {
  SpaceInvariantReport r;
  const std::size_t n = space.size();
  const auto& d = space.distances();
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) r.zero_diagonal = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(d(i, j)) || d(i, j) < 0.0) r.finite = false;
      if (d(i, j) != d(j, i)) r.symmetric = false;
    }
  }
  for (double w : space.weights())
    if (!(w >= 0.0)) r.nonnegative_weights = false;
  const double summed = compensated_sum(space.weights());
  r.mass_consistent =
      std::abs(summed - space.total_mass()) <= 1e-12 * std::max(1.0, std::abs(summed));

  // Rounding in the coordinate differences can break collinear triangles by a few ulps.
  auto triangle_ok = [&](std::size_t i, std::size_t j, std::size_t k) {
    const double rhs = d(i, k) + d(k, j);
    return d(i, j) <= rhs + 1e-12 * std::max(1.0, rhs);
  };
  const double n3 = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
  if (n3 <= static_cast<double>(triple_budget)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          ++r.triples_checked;
          if (!triangle_ok(i, j, k)) r.triangle = false;
        }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t t = 0; t < triple_budget; ++t) {
      ++r.triples_checked;
      if (!triangle_ok(pick(rng), pick(rng), pick(rng))) r.triangle = false;
    }
  }
  return r;
}

}  // namespace uareg
