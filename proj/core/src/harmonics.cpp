#include "sphinterp/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sphinterp {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

void require_sphere_dim(int d) {
  if (d < 2) throw InvalidArgument("sphere dimension d must be >= 2, got " + std::to_string(d));
}

void require_degree(int ell) {
  if (ell < 0) throw InvalidArgument("degree must be >= 0, got " + std::to_string(ell));
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a) {
    throw InvalidArgument("dim_harmonics: integer overflow");
  }
  return a * b;
}

// C(n, k) by the multiplicative formula; every partial product is itself a
// binomial coefficient, so the division is exact at each step.
std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = checked_mul(result, n - k + i) / i;
  }
  return result;
}

}  // namespace

std::int64_t dim_harmonics(int d, int ell) {
  require_sphere_dim(d);
  require_degree(ell);
  if (ell == 0) return 1;
  // (2l+d-1) Gamma(l+d-1) / (Gamma(d) Gamma(l+1)) = (2l+d-1) C(l+d-2, l) / (d-1)
  const std::int64_t numerator = checked_mul(2 * ell + d - 1, binomial(ell + d - 2, ell));
  return numerator / (d - 1);
}

std::int64_t dim_polynomials(int d, int n) { return dim_harmonics(d + 1, n); }

double lb_eigenvalue(int d, int ell) {
  require_sphere_dim(d);
  require_degree(ell);
  return static_cast<double>(ell) * static_cast<double>(ell + d - 1);
}

double legendre_normalized(int ell, double t) {
  require_degree(ell);
  if (!(std::abs(t) <= 1.0 + 1e-12)) {
    throw InvalidArgument("legendre_normalized: argument outside [-1, 1]: " + std::to_string(t));
  }
  t = std::clamp(t, -1.0, 1.0);
  if (ell == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int l = 1; l < ell; ++l) {
    const double next = ((2.0 * l + 1.0) * t * cur - l * prev) / (l + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::size_t flat_index(const BasisIndex& index, int d) {
  require_degree(index.ell);
  const auto count = dim_harmonics(d, index.ell);
  if (index.k < 1 || index.k > count) {
    throw InvalidArgument("flat_index: order index k out of range for degree " +
                          std::to_string(index.ell));
  }
  const std::int64_t offset = index.ell == 0 ? 0 : dim_polynomials(d, index.ell - 1);
  return static_cast<std::size_t>(offset + index.k - 1);
}

BasisIndex basis_index(std::size_t flat) {
  const auto ell = static_cast<int>(std::sqrt(static_cast<double>(flat)));
  // sqrt rounding can be off by one near perfect squares
  int l = ell;
  while (basis_size(l) <= flat) ++l;
  while (l > 0 && basis_size(l - 1) > flat) --l;
  const std::size_t offset = l == 0 ? 0 : basis_size(l - 1);
  return {l, static_cast<int>(flat - offset) + 1};
}

int degree_for_size(std::size_t size) {
  if (size == 0) throw InvalidArgument("coefficient vector must not be empty");
  const BasisIndex last = basis_index(size - 1);
  if (basis_size(last.ell) != size) {
    throw InvalidArgument("coefficient vector length " + std::to_string(size) +
                          " is not (n+1)^2 for any degree n");
  }
  return last.ell;
}

HarmonicBasis::HarmonicBasis(int n, int d) : n_(n), d_(d) {
  require_degree(n);
  require_sphere_dim(d);
  if (d != 2) throw InvalidArgument("HarmonicBasis: numerics are implemented for d = 2 only");

  const auto stride = static_cast<std::size_t>(n + 1);
  a_.assign(stride * stride, 0.0);
  b_.assign(stride * stride, 0.0);
  diag_.assign(stride, 0.0);

  diag_[0] = 1.0 / std::sqrt(kFourPi);
  for (int m = 1; m <= n; ++m) {
    diag_[m] = diag_[m - 1] * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  }
  for (int m = 0; m <= n; ++m) {
    for (int l = m + 2; l <= n; ++l) {
      const double ll = static_cast<double>(l) * l;
      const double mm = static_cast<double>(m) * m;
      const double l1 = static_cast<double>(l - 1) * (l - 1);
      a_[m * stride + l] = std::sqrt((4.0 * ll - 1.0) / (ll - mm));
      b_[m * stride + l] = std::sqrt((l1 - mm) / (4.0 * l1 - 1.0));
    }
  }
}

void HarmonicBasis::evaluate(const SpherePoint& p, std::span<double> out) const {
  if (out.size() != size()) {
    throw InvalidArgument("HarmonicBasis::evaluate: output span has wrong length");
  }
  const double x = p.x();
  const double y = p.y();
  const double z = p.z();
  const auto stride = static_cast<std::size_t>(n_ + 1);
  constexpr double kSqrt2 = std::numbers::sqrt2;

  // cm + i*sm = (x + i y)^m carries the sin(theta)^m factor of Pbar_l^m, so
  // the column recurrence below runs on Pbar_l^m / sin(theta)^m.
  double cm = 1.0;
  double sm = 0.0;
  for (int m = 0; m <= n_; ++m) {
    if (m > 0) {
      const double c_next = x * cm - y * sm;
      sm = x * sm + y * cm;
      cm = c_next;
    }
    double q_prev = 0.0;
    double q = diag_[m];
    for (int l = m; l <= n_; ++l) {
      if (l == m + 1) {
        q_prev = q;
        q = std::sqrt(2.0 * m + 3.0) * z * q_prev;
      } else if (l >= m + 2) {
        const double q_next = a_[m * stride + l] * (z * q - b_[m * stride + l] * q_prev);
        q_prev = q;
        q = q_next;
      }
      const std::size_t base = static_cast<std::size_t>(l) * static_cast<std::size_t>(l);
      if (m == 0) {
        out[base] = q;
      } else {
        out[base + 2 * m - 1] = kSqrt2 * q * cm;
        out[base + 2 * m] = kSqrt2 * q * sm;
      }
    }
  }
}

std::vector<double> HarmonicBasis::evaluate(const SpherePoint& x) const {
  std::vector<double> out(size());
  evaluate(x, out);
  return out;
}

std::vector<double> eval_basis(int n, const SpherePoint& x) { return HarmonicBasis(n).evaluate(x); }

double kernel_eval(int n, const SpherePoint& x, const SpherePoint& y) {
  require_degree(n);
  const double t = std::clamp(x.dot(y), -1.0, 1.0);
  double prev = 1.0;
  double cur = t;
  double sum = 1.0;  // ell = 0 term, times (2*0+1)
  if (n >= 1) sum += 3.0 * t;
  for (int l = 1; l < n; ++l) {
    const double next = ((2.0 * l + 1.0) * t * cur - l * prev) / (l + 1.0);
    prev = cur;
    cur = next;
    sum += (2.0 * (l + 1) + 1.0) * cur;
  }
  return sum / kFourPi;
}

}  // namespace sphinterp
