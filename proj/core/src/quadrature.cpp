#include "sphinterp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "sphinterp/harmonics.hpp"

namespace sphinterp {
namespace {

// Points per block during Gram assembly; bounds the scratch matrix to
// (n+1)^2 x kBlock doubles.
constexpr std::size_t kBlock = 1024;

}  // namespace

double apply(const QuadratureRule& rule, std::span<const double> samples) {
  if (samples.size() != rule.size()) {
    throw InvalidArgument("apply: " + std::to_string(samples.size()) + " samples for a rule of " +
                          std::to_string(rule.size()) + " points");
  }
  const auto weights = rule.weights();
  CompensatedSum sum;
  for (std::size_t j = 0; j < samples.size(); ++j) sum.add(weights[j] * samples[j]);
  return sum.value();
}

Eigen::MatrixXd basis_matrix(std::span<const SpherePoint> points, int n) {
  const HarmonicBasis basis(n);
  Eigen::MatrixXd values(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    basis.evaluate(points[j], std::span<double>(values.col(static_cast<Eigen::Index>(j)).data(), basis.size()));
  }
  return values;
}

Eigen::MatrixXd gram_matrix(const QuadratureRule& rule, int n) {
  const HarmonicBasis basis(n);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const auto points = rule.points();
  const auto weights = rule.weights();

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd block(dim, static_cast<Eigen::Index>(std::min(kBlock, points.size())));
  for (std::size_t start = 0; start < points.size(); start += kBlock) {
    const std::size_t count = std::min(kBlock, points.size() - start);
    for (std::size_t j = 0; j < count; ++j) {
      auto col = block.col(static_cast<Eigen::Index>(j));
      basis.evaluate(points[start + j], std::span<double>(col.data(), basis.size()));
      col *= std::sqrt(weights[start + j]);
    }
    gram.selfadjointView<Eigen::Lower>().rankUpdate(block.leftCols(static_cast<Eigen::Index>(count)));
  }
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
  return gram;
}

MZReport mz_report_from_gram(const Eigen::MatrixXd& gram, int n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverError("mz_constant: symmetric eigensolver failed to converge at degree " +
                           std::to_string(n));
  }
  const auto& eigenvalues = solver.eigenvalues();
  MZReport report;
  report.n = n;
  report.dim = static_cast<std::size_t>(gram.rows());
  // Clamp the PSD matrix's roundoff-negative eigenvalues to zero.
  report.lambda_min = std::max(0.0, eigenvalues.minCoeff());
  report.lambda_max = std::max(report.lambda_min, eigenvalues.maxCoeff());
  report.eta = std::max(std::abs(report.lambda_min - 1.0), std::abs(report.lambda_max - 1.0));
  report.rank_deficient = report.lambda_min <= kRankTolerance;
  return report;
}

MZReport mz_constant(const QuadratureRule& rule, int n) {
  if (n < 0) throw InvalidArgument("mz_constant: degree must be >= 0");
  return mz_report_from_gram(gram_matrix(rule, n), n);
}

ExactnessReport exactness_degree(const QuadratureRule& rule, int max_scan, double tol) {
  if (max_scan < 0) throw InvalidArgument("exactness_degree: max_scan must be >= 0");
  ExactnessReport report;
  report.tol = tol;
  const HarmonicBasis basis(max_scan);
  std::vector<double> integrals(basis.size(), 0.0);
  std::vector<double> values(basis.size());
  const auto points = rule.points();
  const auto weights = rule.weights();
  for (std::size_t j = 0; j < points.size(); ++j) {
    basis.evaluate(points[j], values);
    for (std::size_t i = 0; i < values.size(); ++i) integrals[i] += weights[j] * values[i];
  }
  // int Y_{0,1} = 4 pi / sqrt(4 pi); higher degrees integrate to zero.
  const double constant_integral = std::sqrt(4.0 * std::numbers::pi);
  for (int ell = 0; ell <= max_scan; ++ell) {
    double residual = 0.0;
    for (std::size_t i = basis_size(ell - 1); i < basis_size(ell); ++i) {
      const double target = ell == 0 ? constant_integral : 0.0;
      residual = std::max(residual, std::abs(integrals[i] - target));
    }
    report.residuals.push_back(residual);
    if (residual > tol) break;
    report.degree = ell;
  }
  return report;
}

}  // namespace sphinterp
