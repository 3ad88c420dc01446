#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sphinterp/sphere_point.hpp"

namespace sphinterp {

enum class Provenance { random, equal_area, gauss_product, loaded };

std::string_view to_string(Provenance p) noexcept;

/// Positive-weight quadrature rule sum_j w_j f(x_j) on S^2.
class QuadratureRule {
 public:
  /// Throws InvalidArgument unless the rule is nonempty, the sizes agree and
  /// every weight is finite and strictly positive.
  QuadratureRule(std::vector<SpherePoint> points, std::vector<double> weights,
                 Provenance provenance, std::optional<int> known_exactness = std::nullopt);

  std::span<const SpherePoint> points() const noexcept { return points_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return points_.size(); }
  Provenance provenance() const noexcept { return provenance_; }
  double weight_sum() const noexcept { return weight_sum_; }

  /// Polynomial exactness degree guaranteed by construction, when known.
  std::optional<int> known_exactness() const noexcept { return known_exactness_; }

  /// Same points, every weight multiplied by `factor` > 0.
  QuadratureRule scaled(double factor) const;

 private:
  std::vector<SpherePoint> points_;
  std::vector<double> weights_;
  Provenance provenance_;
  std::optional<int> known_exactness_;
  double weight_sum_ = 0.0;
};

/// m i.i.d. uniform points: elevation asin(2u - 1), azimuth 2 pi u'.
std::vector<SpherePoint> random_uniform(std::size_t m, std::uint64_t seed);

/// Zone layout of the recursive zonal equal-area partition of S^2 into m
/// cells. Zone i spans colatitudes [boundaries[i], boundaries[i+1]] and holds
/// regions[i] cells; the first and last zones are the polar caps.
struct EqualAreaPartition {
  std::size_t cells = 0;
  std::vector<double> boundaries;
  std::vector<std::size_t> regions;
};

EqualAreaPartition equal_area_partition(std::size_t m);

/// Area 2 pi (cos top - cos bottom) of the zone between two colatitudes.
double zone_area(double colat_top, double colat_bottom) noexcept;

/// Centers of the m-cell equal-area partition: cap centers at the poles,
/// collar cells at mid-colatitude with equispaced, zonally offset azimuths.
std::vector<SpherePoint> equal_area(std::size_t m);

/// Points read from a text file, with weights when the file has 4 columns.
struct PointFile {
  std::vector<SpherePoint> points;
  std::optional<std::vector<double>> weights;
};

/// Parse the point-file format: one point per line, `x y z [w]`,
/// whitespace separated, '#' starts a comment line. All rows must have the
/// same column count. Rows within 1e-6 of unit norm are normalized, others
/// rejected. Every error is a ParseError naming `source` and the line.
PointFile parse_pointset(std::istream& in, const std::string& source, bool expect_weights = false);

PointFile load_pointset(const std::filesystem::path& path, bool expect_weights = false);

/// Rule from a point file: file weights if present, else equal weights.
QuadratureRule load_rule(const std::filesystem::path& path);

/// Writes points (and weights, if given) in the point-file format with 17
/// significant digits.
void write_pointset(std::ostream& out, std::span<const SpherePoint> points,
                    std::span<const double> weights = {});

/// Equal weights 4 pi / m, so that constants are integrated exactly.
QuadratureRule equal_weight_rule(std::vector<SpherePoint> points,
                                 Provenance provenance = Provenance::loaded);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int order);

/// N Gauss-Legendre nodes in cos(theta) times 2N equispaced azimuths.
/// Exact for spherical polynomials of degree <= 2N - 1.
QuadratureRule product_gauss_rule(int polar_order);

/// Smallest product rule exact to at least `degree`.
QuadratureRule product_gauss_rule_for_degree(int degree);

}  // namespace sphinterp
