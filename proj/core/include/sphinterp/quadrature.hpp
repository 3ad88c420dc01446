#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sphinterp/pointsets.hpp"
#include "sphinterp/summation.hpp"

namespace sphinterp {

/// sum_j w_j f(x_j).
template <std::invocable<const SpherePoint&> F>
double apply(const QuadratureRule& rule, F&& f) {
  const auto points = rule.points();
  const auto weights = rule.weights();
  CompensatedSum sum;
  for (std::size_t j = 0; j < points.size(); ++j) sum.add(weights[j] * f(points[j]));
  return sum.value();
}

/// sum_j w_j y_j for precomputed samples y_j = f(x_j).
double apply(const QuadratureRule& rule, std::span<const double> samples);

/// Marcinkiewicz-Zygmund report of a rule at degree n.
///
/// With G the discrete Gram matrix <Y_i, Y_j>_m of the degree-n basis, the
/// Rayleigh quotient alpha' G alpha / alpha' alpha is exactly
/// sum_j w_j chi(x_j)^2 / int chi^2 for chi = sum alpha_i Y_i, so the
/// smallest eta with |sum w chi^2 - int chi^2| <= eta int chi^2 on P_n is the
/// spectral norm of G - I.
struct MZReport {
  int n = 0;
  double eta = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::size_t dim = 0;
  bool rank_deficient = false;

  /// True iff eta < 1, i.e. the rule satisfies the MZ property at degree n.
  bool usable() const noexcept { return eta < 1.0; }
};

/// Eigenvalues below this are treated as zero when flagging rank deficiency.
inline constexpr double kRankTolerance = 1e-10;

/// The (n+1)^2 x (n+1)^2 discrete Gram matrix B diag(w) B'.
Eigen::MatrixXd gram_matrix(const QuadratureRule& rule, int n);

/// MZ report from an already assembled Gram matrix of degree n.
MZReport mz_report_from_gram(const Eigen::MatrixXd& gram, int n);

/// Exact (spectral) MZ constant of `rule` at degree n. Throws
/// EigenSolverError if the symmetric eigensolver fails.
MZReport mz_constant(const QuadratureRule& rule, int n);

struct ExactnessReport {
  /// Largest t such that every degree 0..t passed; -1 if even constants fail.
  int degree = -1;
  /// residuals[ell] = max_k |Q(Y_{ell,k}) - int Y_{ell,k}| for each scanned ell.
  std::vector<double> residuals;
  double tol = 0.0;
};

inline constexpr double kDefaultExactnessTolerance = 1e-8;

/// Scans ell = 0..max_scan and reports the largest consecutive degree the
/// rule integrates exactly to within `tol`. Stops at the first failure.
ExactnessReport exactness_degree(const QuadratureRule& rule, int max_scan,
                                 double tol = kDefaultExactnessTolerance);

/// Column-major (n+1)^2 x m matrix of basis values at the rule's points.
Eigen::MatrixXd basis_matrix(std::span<const SpherePoint> points, int n);

}  // namespace sphinterp
