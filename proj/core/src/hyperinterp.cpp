#include "sphinterp/hyperinterp.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace sphinterp {

Hyperinterpolant::Hyperinterpolant(int n, std::vector<double> coefficients, Provenance provenance,
                                   std::optional<double> eta)
    : n_(n), coeffs_(std::move(coefficients)), provenance_(provenance), eta_(eta) {
  if (n < 0) throw InvalidArgument("Hyperinterpolant: degree must be >= 0");
  if (coeffs_.size() != basis_size(n)) {
    throw InvalidArgument("Hyperinterpolant: expected " + std::to_string(basis_size(n)) +
                          " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

double Hyperinterpolant::operator()(const SpherePoint& x) const {
  const std::vector<double> values = eval_basis(n_, x);
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += coeffs_[i] * values[i];
  return sum;
}

double Hyperinterpolant::l2_norm() const noexcept {
  double sum = 0.0;
  for (const double c : coeffs_) sum += c * c;
  return std::sqrt(sum);
}

Hyperinterpolant fit(const QuadratureRule& rule, std::span<const double> samples, int n) {
  if (samples.size() != rule.size()) {
    throw InvalidArgument("fit: " + std::to_string(samples.size()) + " samples for a rule of " +
                          std::to_string(rule.size()) + " points");
  }
  const HarmonicBasis basis(n);
  std::vector<double> coeffs(basis.size(), 0.0);
  std::vector<double> values(basis.size());
  const auto points = rule.points();
  const auto weights = rule.weights();
  for (std::size_t j = 0; j < points.size(); ++j) {
    basis.evaluate(points[j], values);
    const double wy = weights[j] * samples[j];
    for (std::size_t i = 0; i < values.size(); ++i) coeffs[i] += wy * values[i];
  }
  return Hyperinterpolant(n, std::move(coeffs), rule.provenance());
}

std::vector<double> sample(const QuadratureRule& rule, const SphereFunction& f) {
  std::vector<double> samples;
  samples.reserve(rule.size());
  for (const auto& x : rule.points()) samples.push_back(f(x));
  return samples;
}

Hyperinterpolant fit(const QuadratureRule& rule, const SphereFunction& f, int n) {
  const std::vector<double> samples = sample(rule, f);
  return fit(rule, samples, n);
}

Hyperinterpolant fit_audited(const QuadratureRule& rule, std::span<const double> samples, int n) {
  const MZReport report = mz_constant(rule, n);
  if (!report.usable()) {
    throw RankDeficientError("fit_audited: rule of " + std::to_string(rule.size()) +
                             " points has eta = " + std::to_string(report.eta) + " >= 1 at degree " +
                             std::to_string(n) + " (lambda_min = " + std::to_string(report.lambda_min) +
                             ")");
  }
  Hyperinterpolant h = fit(rule, samples, n);
  return Hyperinterpolant(n, std::vector<double>(h.coefficients().begin(), h.coefficients().end()),
                          rule.provenance(), report.eta);
}

double evaluate(const Hyperinterpolant& h, const SpherePoint& x) { return h(x); }

double evaluate_kernel(const QuadratureRule& rule, std::span<const double> samples, int n,
                       const SpherePoint& x) {
  if (samples.size() != rule.size()) {
    throw InvalidArgument("evaluate_kernel: sample count does not match the rule");
  }
  const auto points = rule.points();
  const auto weights = rule.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    sum += weights[j] * samples[j] * kernel_eval(n, x, points[j]);
  }
  return sum;
}

Hyperinterpolant project_reference(const SphereFunction& f, int n, const QuadratureRule& ref) {
  const int exact = ref.known_exactness() ? *ref.known_exactness() : exactness_degree(ref, n + 1).degree;
  if (exact < n + 1) {
    throw InvalidArgument("project_reference: reference rule is exact only to degree " +
                          std::to_string(exact) + ", need at least " + std::to_string(n + 1));
  }
  return fit(ref, f, n);
}

void write_coefficients_csv(std::ostream& out, const Hyperinterpolant& h) {
  out << "ell,k,coeff\n";
  const auto coeffs = h.coefficients();
  char buf[32];
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const BasisIndex idx = basis_index(i);
    std::snprintf(buf, sizeof buf, "%.17g", coeffs[i]);
    out << idx.ell << ',' << idx.k << ',' << buf << '\n';
  }
}

Hyperinterpolant read_coefficients_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.substr(0, 11) != "ell,k,coeff") {
    throw ParseError(source, line_no, "missing header 'ell,k,coeff'");
  }
  std::vector<double> coeffs;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    int ell = 0;
    int k = 0;
    double value = 0.0;
    char c1 = 0;
    char c2 = 0;
    if (!(row >> ell >> c1 >> k >> c2 >> value) || c1 != ',' || c2 != ',') {
      throw ParseError(source, line_no, "expected 'ell,k,coeff'");
    }
    if (basis_index(coeffs.size()) != BasisIndex{ell, k}) {
      throw ParseError(source, line_no, "coefficients out of canonical order");
    }
    coeffs.push_back(value);
  }
  const int n = degree_for_size(coeffs.size());
  return Hyperinterpolant(n, std::move(coeffs), Provenance::loaded);
}

}  // namespace sphinterp
