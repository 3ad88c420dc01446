#include "sphinterp/pointsets.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "sphinterp/random.hpp"
#include "sphinterp/summation.hpp"

namespace sphinterp {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kNormTolerance = 1e-6;

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Splits on blanks and tabs; returns false on the first token that is not a
// complete decimal number.
bool parse_fields(std::string_view line, std::vector<double>& fields, std::string& bad_token) {
  fields.clear();
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    const std::string_view token = line.substr(pos, end - pos);
    double value = 0.0;
    // from_chars rejects a leading '+', which some archives emit
    const std::string_view digits = token.front() == '+' ? token.substr(1) : token;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || !std::isfinite(value)) {
      bad_token = std::string(token);
      return false;
    }
    fields.push_back(value);
    pos = end;
  }
  return true;
}

}  // namespace

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::random: return "random";
    case Provenance::equal_area: return "equal_area";
    case Provenance::gauss_product: return "gauss_product";
    case Provenance::loaded: return "loaded";
  }
  return "unknown";
}

QuadratureRule::QuadratureRule(std::vector<SpherePoint> points, std::vector<double> weights,
                               Provenance provenance, std::optional<int> known_exactness)
    : points_(std::move(points)),
      weights_(std::move(weights)),
      provenance_(provenance),
      known_exactness_(known_exactness) {
  if (points_.empty()) throw InvalidArgument("QuadratureRule: at least one point is required");
  if (points_.size() != weights_.size()) {
    throw InvalidArgument("QuadratureRule: " + std::to_string(points_.size()) + " points but " +
                          std::to_string(weights_.size()) + " weights");
  }
  CompensatedSum sum;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
      throw InvalidArgument("QuadratureRule: weight " + std::to_string(j) + " is not strictly positive");
    }
    sum.add(weights_[j]);
  }
  weight_sum_ = sum.value();
}

QuadratureRule QuadratureRule::scaled(double factor) const {
  std::vector<double> w(weights_);
  for (auto& v : w) v *= factor;
  return QuadratureRule(points_, std::move(w), provenance_, std::nullopt);
}

std::vector<SpherePoint> random_uniform(std::size_t m, std::uint64_t seed) {
  if (m == 0) throw InvalidArgument("random_uniform: m must be >= 1");
  UniformStream stream(seed);
  std::vector<SpherePoint> points;
  points.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double elevation = std::asin(2.0 * stream.next() - 1.0);
    const double azimuth = 2.0 * std::numbers::pi * stream.next();
    const double c = std::cos(elevation);
    points.emplace_back(c * std::cos(azimuth), c * std::sin(azimuth), std::sin(elevation));
  }
  return points;
}

PointFile parse_pointset(std::istream& in, const std::string& source, bool expect_weights) {
  PointFile file;
  std::vector<double> weights;
  std::vector<double> fields;
  std::string bad_token;
  std::size_t columns = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!parse_fields(line, fields, bad_token)) {
      throw ParseError(source, line_no, "not a number: '" + bad_token + "'");
    }
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError(source, line_no,
                       "expected 3 or 4 columns, found " + std::to_string(fields.size()));
    }
    if (columns == 0) {
      columns = fields.size();
      if (expect_weights && columns != 4) {
        throw ParseError(source, line_no, "expected a weight column (4 fields per row)");
      }
    } else if (fields.size() != columns) {
      throw ParseError(source, line_no,
                       "column count changed from " + std::to_string(columns) + " to " +
                           std::to_string(fields.size()));
    }
    const double norm = std::sqrt(fields[0] * fields[0] + fields[1] * fields[1] + fields[2] * fields[2]);
    if (std::abs(norm - 1.0) > kNormTolerance) {
      throw ParseError(source, line_no,
                       "point norm " + format_g17(norm) + " deviates from 1 by more than 1e-06");
    }
    file.points.emplace_back(fields[0], fields[1], fields[2]);
    if (columns == 4) {
      if (!(fields[3] > 0.0)) {
        throw ParseError(source, line_no, "weight " + format_g17(fields[3]) + " is not positive");
      }
      weights.push_back(fields[3]);
    }
  }
  if (file.points.empty()) throw ParseError(source, line_no, "no points found");
  if (columns == 4) file.weights = std::move(weights);
  return file;
}

PointFile load_pointset(const std::filesystem::path& path, bool expect_weights) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open point file " + path.string());
  return parse_pointset(in, path.string(), expect_weights);
}

QuadratureRule load_rule(const std::filesystem::path& path) {
  PointFile file = load_pointset(path);
  if (file.weights) {
    return QuadratureRule(std::move(file.points), std::move(*file.weights), Provenance::loaded);
  }
  return equal_weight_rule(std::move(file.points), Provenance::loaded);
}

void write_pointset(std::ostream& out, std::span<const SpherePoint> points, std::span<const double> weights) {
  if (!weights.empty() && weights.size() != points.size()) {
    throw InvalidArgument("write_pointset: weights and points differ in length");
  }
  for (std::size_t j = 0; j < points.size(); ++j) {
    out << format_g17(points[j].x()) << ' ' << format_g17(points[j].y()) << ' ' << format_g17(points[j].z());
    if (!weights.empty()) out << ' ' << format_g17(weights[j]);
    out << '\n';
  }
}

QuadratureRule equal_weight_rule(std::vector<SpherePoint> points, Provenance provenance) {
  if (points.empty()) throw InvalidArgument("equal_weight_rule: points must not be empty");
  std::vector<double> weights(points.size(), kFourPi / static_cast<double>(points.size()));
  return QuadratureRule(std::move(points), std::move(weights), provenance);
}

QuadratureRule product_gauss_rule(int polar_order) {
  const GaussLegendre gl = gauss_legendre(polar_order);
  const int azimuths = 2 * polar_order;
  const double azimuth_weight = 2.0 * std::numbers::pi / azimuths;
  std::vector<SpherePoint> points;
  std::vector<double> weights;
  points.reserve(gl.nodes.size() * azimuths);
  weights.reserve(gl.nodes.size() * azimuths);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double z = gl.nodes[i];
    const double s = std::sqrt((1.0 - z) * (1.0 + z));
    for (int k = 0; k < azimuths; ++k) {
      const double phi = azimuth_weight * k;
      points.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
      weights.push_back(azimuth_weight * gl.weights[i]);
    }
  }
  return QuadratureRule(std::move(points), std::move(weights), Provenance::gauss_product, 2 * polar_order - 1);
}

QuadratureRule product_gauss_rule_for_degree(int degree) {
  if (degree < 0) throw InvalidArgument("product_gauss_rule_for_degree: degree must be >= 0");
  // 2N - 1 >= degree
  return product_gauss_rule(std::max(1, (degree + 2) / 2));
}

}  // namespace sphinterp
