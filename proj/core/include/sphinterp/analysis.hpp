#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sphinterp/pointsets.hpp"
#include "sphinterp/sphere_point.hpp"

namespace sphinterp {

/// sqrt(sum_q W_q (g - h)^2 (xi_q)) over a reference rule.
double l2_error(const SphereFunction& g, const SphereFunction& h, const QuadratureRule& ref);

/// L2 norm of g by the reference rule.
double l2_norm(const SphereFunction& g, const QuadratureRule& ref);

/// <g, h> by the reference rule.
double l2_inner(const SphereFunction& g, const SphereFunction& h, const QuadratureRule& ref);

/// Sobolev weights a_ell = (1 + lambda_ell)^(-s) on S^2, ell = 0..max_degree.
/// P_n f on a reference rule, kept for repeated error evaluation: for any
/// degree-n coefficient vector a, ||a - f||^2 = ||a - coeffs||^2 + tail^2.
struct ReferenceProjection {
  int n = 0;
  std::vector<double> coeffs;
  double tail = 0.0;
};

/// The reference rule must be exact to degree 2n so the split is exact.
ReferenceProjection reference_projection(const SphereFunction& f, int n, const QuadratureRule& ref);

/// Same for several degrees, sampling f and the basis once.
std::vector<ReferenceProjection> reference_projections(const SphereFunction& f, std::span<const int> degrees,
                                                       const QuadratureRule& ref);

double split_l2_error(std::span<const double> coeffs, const ReferenceProjection& projection);

struct SobolevWeights {
  double s = 0.0;
  std::vector<double> a;

  static SobolevWeights make(double s, int max_degree);
  double operator[](int ell) const { return a.at(static_cast<std::size_t>(ell)); }
};

/// H^s norm sqrt(sum |c_{ell,k}|^2 / a_ell) of a coefficient vector in
/// canonical order (length must be a square).
double sobolev_norm(std::span<const double> coeffs, double s);

/// max |f| over an equal-area grid of `grid_size` points. This is a lower
/// bound on the uniform norm; it converges from below as the grid refines.
double uniform_norm_estimate(const SphereFunction& f, std::size_t grid_size);

/// max of uniform_norm_estimate on grid_size and 4 * grid_size points.
double uniform_norm_refined(const SphereFunction& f, std::size_t grid_size);

struct RateSample {
  double size = 0.0;
  double error = 0.0;
};

/// Least-squares line log(error) = intercept + slope * log(size).
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

/// Throws InvalidArgument for fewer than two samples, nonpositive values or
/// all sizes equal.
RateFit fit_rate(std::span<const RateSample> samples);

/// Ratio ||fg||_{H^s} / (||f||_{H^s} ||g||_{H^s}) for two degree-n
/// polynomials given by coefficients. The degree-2n product is projected with
/// `ref`, which must be exact to degree 4n. Requires s > 1.
double banach_algebra_diagnostic(std::span<const double> f_coeffs, std::span<const double> g_coeffs,
                                 double s, const QuadratureRule& ref);

}  // namespace sphinterp
