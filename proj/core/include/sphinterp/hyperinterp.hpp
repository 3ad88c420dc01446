#pragma once

#include <concepts>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sphinterp/harmonics.hpp"
#include "sphinterp/pointsets.hpp"
#include "sphinterp/quadrature.hpp"

namespace sphinterp {

/// Degree-n spherical polynomial sum_{ell,k} alpha_{ell,k} Y_{ell,k} produced
/// by a quadrature rule. The original, unfettered and QMC variants differ
/// only in the rule that produced the coefficients.
class Hyperinterpolant {
 public:
  Hyperinterpolant(int n, std::vector<double> coefficients, Provenance provenance,
                   std::optional<double> eta = std::nullopt);

  int degree() const noexcept { return n_; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  double coefficient(const BasisIndex& index) const { return coeffs_.at(flat_index(index)); }
  Provenance provenance() const noexcept { return provenance_; }
  /// MZ constant of the producing rule, when the fit was audited.
  std::optional<double> eta_used() const noexcept { return eta_; }

  /// Basis-sum evaluation.
  double operator()(const SpherePoint& x) const;

  /// L2 norm, exact by orthonormality: sqrt(sum alpha^2).
  double l2_norm() const noexcept;

 private:
  int n_;
  std::vector<double> coeffs_;
  Provenance provenance_;
  std::optional<double> eta_;
};

/// alpha_{ell,k} = sum_j w_j y_j Y_{ell,k}(x_j). No exactness or MZ check.
Hyperinterpolant fit(const QuadratureRule& rule, std::span<const double> samples, int n);

/// Samples f at the rule's points, then fits.
std::vector<double> sample(const QuadratureRule& rule, const SphereFunction& f);
Hyperinterpolant fit(const QuadratureRule& rule, const SphereFunction& f, int n);

/// Fit that first computes the MZ constant and refuses (RankDeficientError)
/// when eta >= 1. The returned interpolant records eta.
Hyperinterpolant fit_audited(const QuadratureRule& rule, std::span<const double> samples, int n);

double evaluate(const Hyperinterpolant& h, const SpherePoint& x);

/// Kernel form sum_j w_j y_j G_n(x, x_j); agrees with the basis form of
/// fit(rule, samples, n) without forming the coefficients.
double evaluate_kernel(const QuadratureRule& rule, std::span<const double> samples, int n,
                       const SpherePoint& x);

/// Reference L2 projection P_n f, with coefficients integrated by a
/// high-exactness rule standing in for the exact Fourier coefficients.
/// Throws InvalidArgument if `ref` is not exact to at least degree n + 1.
Hyperinterpolant project_reference(const SphereFunction& f, int n, const QuadratureRule& ref);

/// CSV with header `ell,k,coeff`, one row per coefficient, 17 significant digits.
void write_coefficients_csv(std::ostream& out, const Hyperinterpolant& h);
Hyperinterpolant read_coefficients_csv(std::istream& in, const std::string& source = "<csv>");

}  // namespace sphinterp
