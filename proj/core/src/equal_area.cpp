// Recursive zonal equal-area partition of S^2: two polar caps of area
// 4 pi / m plus collars whose cell counts are rounded from the ideal
// collar areas with the rounding discrepancy carried forward.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sphinterp/pointsets.hpp"

namespace sphinterp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

// Colatitude of the polar cap with the given area.
double cap_radius(double area) {
  return 2.0 * std::asin(std::min(1.0, std::sqrt(area / kFourPi)));
}

double polar_colatitude(std::size_t m) {
  if (m == 1) return kPi;
  if (m == 2) return kPi / 2.0;
  return cap_radius(kFourPi / static_cast<double>(m));
}

std::size_t collar_count(std::size_t m, double c_polar) {
  if (m <= 2) return 0;
  const double ideal_angle = std::sqrt(kFourPi / static_cast<double>(m));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::round((kPi - 2.0 * c_polar) / ideal_angle)));
}

double circle_offset(std::size_t n_top, std::size_t n_bottom) {
  const double top = static_cast<double>(n_top);
  const double bottom = static_cast<double>(n_bottom);
  return (1.0 / bottom - 1.0 / top) / 2.0 +
         static_cast<double>(std::gcd(n_top, n_bottom)) / (2.0 * top * bottom);
}

}  // namespace

double zone_area(double colat_top, double colat_bottom) noexcept {
  return 2.0 * kPi * (std::cos(colat_top) - std::cos(colat_bottom));
}

EqualAreaPartition equal_area_partition(std::size_t m) {
  if (m == 0) throw InvalidArgument("equal_area: m must be >= 1");
  EqualAreaPartition part;
  part.cells = m;
  if (m == 1) {
    part.boundaries = {0.0, kPi};
    part.regions = {1};
    return part;
  }

  const double c_polar = polar_colatitude(m);
  const std::size_t n_collars = collar_count(m, c_polar);
  const double ideal_area = kFourPi / static_cast<double>(m);

  std::vector<double> ideal(n_collars + 2, 1.0);
  if (n_collars > 0) {
    const double fitting = (kPi - 2.0 * c_polar) / static_cast<double>(n_collars);
    for (std::size_t i = 1; i <= n_collars; ++i) {
      const double top = c_polar + static_cast<double>(i - 1) * fitting;
      ideal[i] = zone_area(top, top + fitting) / ideal_area;
    }
  }

  part.regions.resize(ideal.size());
  double discrepancy = 0.0;
  for (std::size_t z = 0; z < ideal.size(); ++z) {
    const double rounded = std::round(ideal[z] + discrepancy);
    part.regions[z] = static_cast<std::size_t>(rounded);
    discrepancy += ideal[z] - rounded;
  }

  part.boundaries.resize(ideal.size() + 1);
  part.boundaries.front() = 0.0;
  part.boundaries[1] = c_polar;
  std::size_t subtotal = 1;
  for (std::size_t i = 1; i <= n_collars; ++i) {
    subtotal += part.regions[i];
    part.boundaries[i + 1] = cap_radius(static_cast<double>(subtotal) * ideal_area);
  }
  part.boundaries.back() = kPi;
  return part;
}

std::vector<SpherePoint> equal_area(std::size_t m) {
  const EqualAreaPartition part = equal_area_partition(m);
  std::vector<SpherePoint> points;
  points.reserve(m);
  points.emplace_back(0.0, 0.0, 1.0);
  if (m == 1) return points;

  const std::size_t zones = part.regions.size();
  double offset = 0.0;
  for (std::size_t z = 1; z + 1 < zones; ++z) {
    const std::size_t count = part.regions[z];
    const double colat = 0.5 * (part.boundaries[z] + part.boundaries[z + 1]);
    for (std::size_t i = 0; i < count; ++i) {
      const double base = (static_cast<double>(i) + 0.5) * 2.0 * kPi / static_cast<double>(count);
      const double azimuth = std::fmod(base + 2.0 * kPi * offset, 2.0 * kPi);
      points.push_back(SpherePoint::from_spherical(colat, azimuth));
    }
    offset += circle_offset(count, part.regions[z + 1]);
    offset -= std::floor(offset);
  }
  points.emplace_back(0.0, 0.0, -1.0);
  return points;
}

}  // namespace sphinterp
