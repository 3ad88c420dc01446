#include "sphinterp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphinterp/harmonics.hpp"
#include "sphinterp/hyperinterp.hpp"
#include "sphinterp/quadrature.hpp"
#include "sphinterp/summation.hpp"

namespace sphinterp {

double l2_inner(const SphereFunction& g, const SphereFunction& h, const QuadratureRule& ref) {
  return apply(ref, [&](const SpherePoint& x) { return g(x) * h(x); });
}

double l2_norm(const SphereFunction& g, const QuadratureRule& ref) {
  return std::sqrt(apply(ref, [&](const SpherePoint& x) {
    const double v = g(x);
    return v * v;
  }));
}

double l2_error(const SphereFunction& g, const SphereFunction& h, const QuadratureRule& ref) {
  return std::sqrt(apply(ref, [&](const SpherePoint& x) {
    const double d = g(x) - h(x);
    return d * d;
  }));
}

std::vector<ReferenceProjection> reference_projections(const SphereFunction& f, std::span<const int> degrees,
                                                       const QuadratureRule& ref) {
  if (degrees.empty()) return {};
  const int n_max = *std::max_element(degrees.begin(), degrees.end());
  if (*std::min_element(degrees.begin(), degrees.end()) < 0) {
    throw InvalidArgument("reference_projections: degrees must be >= 0");
  }
  const int exact = ref.known_exactness() ? *ref.known_exactness() : exactness_degree(ref, 2 * n_max).degree;
  if (exact < 2 * n_max) {
    throw InvalidArgument("reference rule is exact only to degree " + std::to_string(exact) + ", need " +
                          std::to_string(2 * n_max));
  }
  const std::vector<double> samples = sample(ref, f);
  const Hyperinterpolant full = fit(ref, samples, n_max);
  const auto coeffs = full.coefficients();

  // Tail of every truncation degree from one pass over the reference points.
  const HarmonicBasis basis(n_max);
  std::vector<double> values(basis.size());
  std::vector<double> partial(static_cast<std::size_t>(n_max) + 1);
  std::vector<CompensatedSum> tails(partial.size());
  const auto points = ref.points();
  const auto weights = ref.weights();
  for (std::size_t j = 0; j < points.size(); ++j) {
    basis.evaluate(points[j], values);
    double s = 0.0;
    for (int ell = 0; ell <= n_max; ++ell) {
      for (std::size_t i = basis_size(ell - 1); i < basis_size(ell); ++i) s += coeffs[i] * values[i];
      const double d = samples[j] - s;
      tails[static_cast<std::size_t>(ell)].add(weights[j] * d * d);
    }
  }

  std::vector<ReferenceProjection> out;
  out.reserve(degrees.size());
  for (const int n : degrees) {
    ReferenceProjection p;
    p.n = n;
    p.coeffs.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(basis_size(n)));
    p.tail = std::sqrt(std::max(0.0, tails[static_cast<std::size_t>(n)].value()));
    out.push_back(std::move(p));
  }
  return out;
}

ReferenceProjection reference_projection(const SphereFunction& f, int n, const QuadratureRule& ref) {
  const int degrees[] = {n};
  return std::move(reference_projections(f, degrees, ref).front());
}

double split_l2_error(std::span<const double> coeffs, const ReferenceProjection& projection) {
  if (coeffs.size() != projection.coeffs.size()) {
    throw InvalidArgument("split_l2_error: coefficient vector has the wrong degree");
  }
  double sum = projection.tail * projection.tail;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double d = coeffs[i] - projection.coeffs[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

SobolevWeights SobolevWeights::make(double s, int max_degree) {
  if (s < 0.0) throw InvalidArgument("Sobolev smoothness s must be >= 0");
  if (max_degree < 0) throw InvalidArgument("Sobolev weights need max_degree >= 0");
  SobolevWeights w;
  w.s = s;
  w.a.reserve(static_cast<std::size_t>(max_degree) + 1);
  for (int ell = 0; ell <= max_degree; ++ell) w.a.push_back(std::pow(1.0 + lb_eigenvalue(2, ell), -s));
  return w;
}

double sobolev_norm(std::span<const double> coeffs, double s) {
  const int n = degree_for_size(coeffs.size());
  if (s < 0.0) throw InvalidArgument("sobolev_norm: s must be >= 0");
  double sum = 0.0;
  for (int ell = 0; ell <= n; ++ell) {
    // 1 / a_ell = (1 + lambda_ell)^s
    const double inv_a = std::pow(1.0 + lb_eigenvalue(2, ell), s);
    for (std::size_t i = basis_size(ell - 1); i < basis_size(ell); ++i) sum += coeffs[i] * coeffs[i] * inv_a;
  }
  return std::sqrt(sum);
}

double uniform_norm_estimate(const SphereFunction& f, std::size_t grid_size) {
  if (grid_size == 0) throw InvalidArgument("uniform_norm_estimate: grid_size must be positive");
  double best = 0.0;
  for (const auto& x : equal_area(grid_size)) best = std::max(best, std::abs(f(x)));
  return best;
}

double uniform_norm_refined(const SphereFunction& f, std::size_t grid_size) {
  return std::max(uniform_norm_estimate(f, grid_size), uniform_norm_estimate(f, 4 * grid_size));
}

RateFit fit_rate(std::span<const RateSample> samples) {
  if (samples.size() < 2) throw InvalidArgument("fit_rate: need at least two samples");
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& s : samples) {
    if (!(s.size > 0.0) || !(s.error > 0.0)) {
      throw InvalidArgument("fit_rate: sizes and errors must be positive");
    }
    mean_x += std::log(s.size);
    mean_y += std::log(s.error);
  }
  const auto count = static_cast<double>(samples.size());
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log(s.size) - mean_x;
    const double dy = std::log(s.error) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw InvalidArgument("fit_rate: all sizes are equal");
  RateFit fit;
  fit.n_points = samples.size();
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  const double ss_res = std::max(0.0, syy - fit.slope * sxy);
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

double banach_algebra_diagnostic(std::span<const double> f_coeffs, std::span<const double> g_coeffs,
                                 double s, const QuadratureRule& ref) {
  if (!(s > 1.0)) throw InvalidArgument("banach_algebra_diagnostic: need s > d/2 = 1");
  const int nf = degree_for_size(f_coeffs.size());
  const int ng = degree_for_size(g_coeffs.size());
  const int product_degree = nf + ng;
  const int needed = 2 * product_degree;
  const int exact = ref.known_exactness() ? *ref.known_exactness() : exactness_degree(ref, needed).degree;
  if (exact < needed) {
    throw InvalidArgument("banach_algebra_diagnostic: reference rule exact to degree " +
                          std::to_string(exact) + ", need " + std::to_string(needed));
  }
  const Hyperinterpolant f(nf, {f_coeffs.begin(), f_coeffs.end()}, Provenance::loaded);
  const Hyperinterpolant g(ng, {g_coeffs.begin(), g_coeffs.end()}, Provenance::loaded);
  const Hyperinterpolant product = fit(ref, [&](const SpherePoint& x) { return f(x) * g(x); }, product_degree);
  return sobolev_norm(product.coefficients(), s) / (sobolev_norm(f_coeffs, s) * sobolev_norm(g_coeffs, s));
}

}  // namespace sphinterp
