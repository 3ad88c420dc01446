#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sphinterp/harmonics.hpp"

using namespace sphinterp;

namespace {

SpherePoint to_point(const std::array<double, 3>& v) { return SpherePoint(v); }

}  // namespace

TEST(DimHarmonics, SmallValues) {
  EXPECT_EQ(dim_harmonics(2, 0), 1);
  EXPECT_EQ(dim_harmonics(2, 2), 5);
  EXPECT_EQ(dim_harmonics(3, 1), 4);
}

TEST(DimHarmonics, MatchesHomogeneousPolynomialCount) {
  for (int d = 2; d <= 6; ++d) {
    for (int ell = 0; ell <= 30; ++ell) {
      EXPECT_EQ(dim_harmonics(d, ell), oracle::dim_harmonics(d, ell)) << "d=" << d << " ell=" << ell;
    }
  }
}

TEST(DimHarmonics, TwoSphereIsOddNumbers) {
  for (int ell = 0; ell <= 200; ++ell) EXPECT_EQ(dim_harmonics(2, ell), 2 * ell + 1);
}

TEST(DimHarmonics, RejectsInvalid) {
  EXPECT_THROW(dim_harmonics(1, 3), InvalidArgument);
  EXPECT_THROW(dim_harmonics(2, -1), InvalidArgument);
}

TEST(DimPolynomials, SumOfHarmonicDimensions) {
  for (int d = 2; d <= 5; ++d) {
    std::int64_t sum = 0;
    for (int n = 0; n <= 20; ++n) {
      sum += dim_harmonics(d, n);
      EXPECT_EQ(dim_polynomials(d, n), sum);
    }
  }
  EXPECT_EQ(dim_polynomials(2, 10), 121);
}

TEST(LaplaceBeltrami, Eigenvalues) {
  EXPECT_DOUBLE_EQ(lb_eigenvalue(2, 0), 0.0);
  EXPECT_DOUBLE_EQ(lb_eigenvalue(2, 1), 2.0);
  EXPECT_DOUBLE_EQ(lb_eigenvalue(2, 3), 12.0);
  EXPECT_DOUBLE_EQ(lb_eigenvalue(3, 2), 8.0);
  EXPECT_THROW(lb_eigenvalue(1, 1), InvalidArgument);
  EXPECT_THROW(lb_eigenvalue(2, -2), InvalidArgument);
}

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre_normalized(5, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(legendre_normalized(1, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(legendre_normalized(2, 0.0), -0.5);
}

TEST(Legendre, OneAtNorthPoleForAllDegrees) {
  for (int ell = 0; ell <= 300; ++ell) EXPECT_EQ(legendre_normalized(ell, 1.0), 1.0) << ell;
  for (int ell = 0; ell <= 300; ++ell) {
    EXPECT_NEAR(legendre_normalized(ell, -1.0), ell % 2 == 0 ? 1.0 : -1.0, 1e-12) << ell;
  }
}

TEST(Legendre, AgreesWithStandardLibrary) {
  for (int ell = 0; ell <= 60; ++ell) {
    for (double t = -1.0; t <= 1.0; t += 0.0625) {
      EXPECT_NEAR(legendre_normalized(ell, t), std::legendre(static_cast<unsigned>(ell), t), 1e-12);
    }
  }
}

TEST(Legendre, DomainTolerance) {
  EXPECT_NO_THROW(legendre_normalized(3, 1.0 + 1e-13));
  EXPECT_NEAR(legendre_normalized(3, 1.0 + 1e-13), 1.0, 1e-12);
  EXPECT_THROW(legendre_normalized(3, 1.0 + 1e-9), InvalidArgument);
  EXPECT_THROW(legendre_normalized(3, -1.1), InvalidArgument);
  EXPECT_THROW(legendre_normalized(-1, 0.0), InvalidArgument);
}

TEST(BasisIndexing, FlatPositionIsCumulativeDimension) {
  std::size_t expected = 0;
  for (int ell = 0; ell <= 25; ++ell) {
    for (int k = 1; k <= 2 * ell + 1; ++k) {
      const BasisIndex idx{ell, k};
      EXPECT_EQ(flat_index(idx), expected);
      EXPECT_EQ(basis_index(expected), idx);
      ++expected;
    }
  }
}

TEST(BasisIndexing, HigherDimensionalLayout) {
  // On S^3 the block sizes are (ell+1)^2.
  EXPECT_EQ(flat_index({0, 1}, 3), 0u);
  EXPECT_EQ(flat_index({1, 1}, 3), 1u);
  EXPECT_EQ(flat_index({2, 1}, 3), 5u);
  EXPECT_EQ(flat_index({2, 9}, 3), 13u);
}

TEST(BasisIndexing, RejectsOutOfRangeOrder) {
  EXPECT_THROW(flat_index({2, 0}), InvalidArgument);
  EXPECT_THROW(flat_index({2, 6}), InvalidArgument);
}

TEST(BasisIndexing, SizeAndDegree) {
  for (int n = 0; n <= 50; ++n) {
    EXPECT_EQ(basis_size(n), static_cast<std::size_t>((n + 1) * (n + 1)));
    EXPECT_EQ(degree_for_size(basis_size(n)), n);
    EXPECT_EQ(HarmonicBasis(n).size(), static_cast<std::size_t>(dim_polynomials(2, n)));
  }
  EXPECT_THROW(degree_for_size(5), InvalidArgument);
}

TEST(HarmonicBasis, OnlyTwoSphereNumerics) {
  EXPECT_THROW(HarmonicBasis(4, 3), InvalidArgument);
  EXPECT_THROW(HarmonicBasis(-1), InvalidArgument);
}

TEST(EvalBasis, ConstantTerm) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto y = eval_basis(4, to_point(oracle::random_unit(rng)));
    EXPECT_NEAR(y[0], 1.0 / std::sqrt(oracle::kFourPi), 1e-15);
  }
}

TEST(EvalBasis, AdditionTheorem) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> deg(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const int ell = deg(rng);
    const auto y = eval_basis(ell, to_point(oracle::random_unit(rng)));
    double sum = 0.0;
    for (std::size_t i = flat_index({ell, 1}); i < y.size(); ++i) sum += y[i] * y[i];
    EXPECT_NEAR(sum, (2 * ell + 1) / oracle::kFourPi, 1e-10) << "ell=" << ell;
  }
}

TEST(EvalBasis, AgreesWithStandardLibrarySphericalLegendre) {
  std::mt19937_64 rng(13);
  const int n = 30;
  for (int trial = 0; trial < 40; ++trial) {
    const auto v = oracle::random_unit(rng);
    const auto y = eval_basis(n, to_point(v));
    for (int ell = 0; ell <= n; ++ell) {
      for (int k = 1; k <= 2 * ell + 1; ++k) {
        EXPECT_NEAR(y[flat_index({ell, k})], oracle::real_sh(ell, k, v), 1e-12)
            << "ell=" << ell << " k=" << k;
      }
    }
  }
}

TEST(EvalBasis, PolesAreFinite) {
  for (const auto& p : {SpherePoint(0, 0, 1), SpherePoint(0, 0, -1)}) {
    const auto y = eval_basis(40, p);
    for (int ell = 0; ell <= 40; ++ell) {
      EXPECT_NEAR(y[flat_index({ell, 1})], std::sqrt((2 * ell + 1) / oracle::kFourPi) * (p.z() > 0 || ell % 2 == 0 ? 1 : -1),
                  1e-12);
      for (int k = 2; k <= 2 * ell + 1; ++k) EXPECT_EQ(y[flat_index({ell, k})], 0.0);
    }
  }
}

TEST(EvalBasis, OrthonormalUnderIndependentGaussRule) {
  const int n = 10;
  const auto rule = oracle::product_rule(n + 1);  // exact to 2n+1
  const std::size_t dim = basis_size(n);
  std::vector<double> gram(dim * dim, 0.0);
  for (const auto& node : rule) {
    const auto y = eval_basis(n, SpherePoint(node.x, node.y, node.z));
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) gram[i * dim + j] += node.w * y[i] * y[j];
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) EXPECT_NEAR(gram[i * dim + j], i == j ? 1.0 : 0.0, 1e-10);
  }
}

TEST(EvalBasis, UniformBoundOnDenseGrid) {
  const int n = 12;
  const int ntheta = 100, nphi = 100;  // 10^4 points
  std::vector<double> peak(basis_size(n), 0.0);
  for (int i = 0; i < ntheta; ++i) {
    for (int j = 0; j < nphi; ++j) {
      const auto x = SpherePoint::from_spherical(std::numbers::pi * (i + 0.5) / ntheta, 2 * std::numbers::pi * j / nphi);
      const auto y = eval_basis(n, x);
      for (std::size_t q = 0; q < y.size(); ++q) peak[q] = std::max(peak[q], std::abs(y[q]));
    }
  }
  for (std::size_t q = 0; q < peak.size(); ++q) {
    const int ell = basis_index(q).ell;
    EXPECT_LE(peak[q], std::sqrt((2 * ell + 1) / oracle::kFourPi) + 1e-10);
  }
}

TEST(EvalBasis, HighDegreeStaysBounded) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const auto y = eval_basis(120, to_point(oracle::random_unit(rng)));
    for (double v : y) ASSERT_TRUE(std::isfinite(v));
    double sum = 0.0;
    for (std::size_t i = flat_index({120, 1}); i < y.size(); ++i) sum += y[i] * y[i];
    EXPECT_NEAR(sum, 241 / oracle::kFourPi, 1e-9);
  }
}

TEST(EvalBasis, SpanOverloadMatchesVector) {
  HarmonicBasis basis(7);
  std::vector<double> out(basis.size());
  const SpherePoint x(0.3, -0.4, 0.5);
  basis.evaluate(x, out);
  EXPECT_EQ(out, eval_basis(7, x));
  std::vector<double> small(3);
  EXPECT_THROW(basis.evaluate(x, small), InvalidArgument);
}

TEST(Kernel, Examples) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = to_point(oracle::random_unit(rng));
    const auto y = to_point(oracle::random_unit(rng));
    EXPECT_NEAR(kernel_eval(0, x, y), 1.0 / oracle::kFourPi, 1e-15);
    for (int n : {1, 5, 17}) {
      EXPECT_NEAR(kernel_eval(n, x, x), (n + 1) * (n + 1) / oracle::kFourPi, 1e-12);
      EXPECT_EQ(kernel_eval(n, x, y), kernel_eval(n, y, x));
    }
  }
}

TEST(Kernel, MatchesExplicitDoubleSum) {
  std::mt19937_64 rng(16);
  for (int n = 0; n <= 15; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = to_point(oracle::random_unit(rng));
      const auto y = to_point(oracle::random_unit(rng));
      const auto bx = eval_basis(n, x);
      const auto by = eval_basis(n, y);
      double sum = 0.0;
      for (std::size_t i = 0; i < bx.size(); ++i) sum += bx[i] * by[i];
      EXPECT_NEAR(kernel_eval(n, x, y), sum, 1e-10);
    }
  }
}

TEST(Kernel, ReproducingProperty) {
  std::mt19937_64 rng(17);
  for (int n : {0, 3, 8, 14}) {
    const auto rule = oracle::product_rule(n + 1);
    for (int trial = 0; trial < 5; ++trial) {
      const auto alpha = oracle::random_coefficients(basis_size(n), rng);
      auto chi = [&](const SpherePoint& p) {
        const auto b = eval_basis(n, p);
        double v = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) v += alpha[i] * b[i];
        return v;
      };
      const auto x = to_point(oracle::random_unit(rng));
      double inner = 0.0;
      for (const auto& node : rule) {
        const SpherePoint q(node.x, node.y, node.z);
        inner += node.w * chi(q) * kernel_eval(n, q, x);
      }
      EXPECT_NEAR(inner, chi(x), 1e-9) << "n=" << n;
    }
  }
}

TEST(SpherePointType, NormalizesAndRejects) {
  const SpherePoint p(3.0, 0.0, 4.0);
  EXPECT_NEAR(std::hypot(p.x(), p.y(), p.z()), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(p.x(), 0.6);
  EXPECT_THROW(SpherePoint(0.0, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW(SpherePoint(std::nan(""), 0.0, 1.0), InvalidArgument);
  const SpherePoint q = SpherePoint::from_spherical(std::numbers::pi / 2, 0.0);
  EXPECT_NEAR(q.geodesic_distance(SpherePoint()), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(SpherePoint(0, 0, -1).geodesic_distance(SpherePoint()), std::numbers::pi, 1e-15);
}
