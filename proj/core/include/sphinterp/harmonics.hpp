#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sphinterp/sphere_point.hpp"

namespace sphinterp {

/// Number Z(d, ell) of linearly independent spherical harmonics of exact
/// degree `ell` on S^d. Computed in integer arithmetic; throws on d < 2,
/// ell < 0 or overflow.
std::int64_t dim_harmonics(int d, int ell);

/// Dimension Z(d+1, n) of the space of spherical polynomials of degree <= n.
std::int64_t dim_polynomials(int d, int n);

/// Eigenvalue ell*(ell+d-1) of the negative Laplace-Beltrami operator.
double lb_eigenvalue(int d, int ell);

/// Legendre polynomial P_ell(t), normalized so that P_ell(1) = 1.
/// Rejects |t| > 1 + 1e-12; values just outside [-1, 1] are clamped.
double legendre_normalized(int ell, double t);

/// Position (ell, k) of a harmonic, 1 <= k <= Z(d, ell).
struct BasisIndex {
  int ell = 0;
  int k = 1;
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// Flat position in the canonical degree-major ordering on S^d.
std::size_t flat_index(const BasisIndex& index, int d = 2);

/// Inverse of flat_index on S^2.
BasisIndex basis_index(std::size_t flat);

/// (n+1)^2, the length of a degree-n coefficient vector on S^2.
constexpr std::size_t basis_size(int n) noexcept {
  return static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1);
}

/// Degree n with basis_size(n) == size; throws if `size` is not a square.
int degree_for_size(std::size_t size);

/// Real orthonormal spherical harmonics on S^2 up to degree n.
///
/// Orthonormal w.r.t. the unnormalized surface measure (area 4*pi). Within
/// degree ell the order index k maps to the azimuthal order as
///   k = 1      -> m = 0
///   k = 2m     -> sqrt(2) * Pbar_ell^m(cos theta) * cos(m phi)
///   k = 2m + 1 -> sqrt(2) * Pbar_ell^m(cos theta) * sin(m phi)
/// with Pbar the fully normalized associated Legendre function (no
/// Condon-Shortley phase). Evaluation is written directly in (x, y, z) and is
/// polynomial in the coordinates, so the poles need no special casing.
class HarmonicBasis {
 public:
  explicit HarmonicBasis(int n, int d = 2);

  int degree() const noexcept { return n_; }
  int sphere_dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return basis_size(n_); }

  /// Writes all Y_{ell,k}(x), ell <= n, into `out` (length size()).
  void evaluate(const SpherePoint& x, std::span<double> out) const;
  std::vector<double> evaluate(const SpherePoint& x) const;

 private:
  int n_;
  int d_;
  // Recurrence coefficients for the column of order m, indexed flat as m*(n+1)+ell.
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> diag_;
};

/// Convenience wrapper around HarmonicBasis(n).evaluate(x).
std::vector<double> eval_basis(int n, const SpherePoint& x);

/// Reproducing kernel G_n(x, y) = sum_{ell<=n} (2 ell + 1)/(4 pi) P_ell(x.y),
/// via the addition theorem in O(n).
double kernel_eval(int n, const SpherePoint& x, const SpherePoint& y);

}  // namespace sphinterp
