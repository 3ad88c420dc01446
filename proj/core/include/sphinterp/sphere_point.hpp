#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "sphinterp/errors.hpp"

namespace sphinterp {

/// A point on the unit sphere S^2 in Cartesian coordinates.
///
/// Construction normalizes the input vector; zero or non-finite input is
/// rejected. The stored vector has Euclidean norm 1 to within rounding.
class SpherePoint {
 public:
  SpherePoint() = default;  // north pole

  SpherePoint(double x, double y, double z) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(norm) || norm == 0.0) {
      throw InvalidArgument("SpherePoint: cannot normalize a zero or non-finite vector");
    }
    coords_ = {x / norm, y / norm, z / norm};
  }

  explicit SpherePoint(const std::array<double, 3>& v) : SpherePoint(v[0], v[1], v[2]) {}

  /// Point at colatitude `theta` in [0, pi] and azimuth `phi`.
  static SpherePoint from_spherical(double theta, double phi) {
    const double s = std::sin(theta);
    return SpherePoint(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
  }

  double x() const noexcept { return coords_[0]; }
  double y() const noexcept { return coords_[1]; }
  double z() const noexcept { return coords_[2]; }
  const std::array<double, 3>& coords() const noexcept { return coords_; }

  double dot(const SpherePoint& other) const noexcept {
    return coords_[0] * other.coords_[0] + coords_[1] * other.coords_[1] +
           coords_[2] * other.coords_[2];
  }

  /// Euclidean distance in R^3.
  double chordal_distance(const SpherePoint& other) const noexcept {
    const double dx = coords_[0] - other.coords_[0];
    const double dy = coords_[1] - other.coords_[1];
    const double dz = coords_[2] - other.coords_[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  }

  /// Great-circle distance.
  double geodesic_distance(const SpherePoint& other) const noexcept {
    // 2*asin(chord/2) stays accurate for nearby points, unlike acos(dot).
    return 2.0 * std::asin(std::min(1.0, 0.5 * chordal_distance(other)));
  }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  std::array<double, 3> coords_{0.0, 0.0, 1.0};
};

/// A real-valued function on the sphere.
using SphereFunction = std::function<double(const SpherePoint&)>;

}  // namespace sphinterp
