#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sphinterp/harmonics.hpp"
#include "sphinterp/pointsets.hpp"
#include "sphinterp/quadrature.hpp"

using namespace sphinterp;

namespace {

constexpr double kPi = std::numbers::pi;

std::string parse_error_message(const std::string& text, bool expect_weights = false) {
  std::istringstream in(text);
  try {
    parse_pointset(in, "pts.txt", expect_weights);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(RandomUniform, UnitNorm) {
  for (const auto& p : random_uniform(5000, 3)) {
    EXPECT_NEAR(std::sqrt(p.x() * p.x() + p.y() * p.y() + p.z() * p.z()), 1.0, 1e-12);
  }
}

TEST(RandomUniform, MeanNearZero) {
  const auto pts = random_uniform(100000, 1);
  double sx = 0, sy = 0, sz = 0;
  for (const auto& p : pts) {
    sx += p.x();
    sy += p.y();
    sz += p.z();
  }
  const double m = static_cast<double>(pts.size());
  EXPECT_LT(std::abs(sx / m), 0.02);
  EXPECT_LT(std::abs(sy / m), 0.02);
  EXPECT_LT(std::abs(sz / m), 0.02);
}

TEST(RandomUniform, ZCoordinateIsUniform) {
  // Archimedes: z is uniform on [-1, 1] for the uniform measure.
  const auto pts = random_uniform(40000, 5);
  std::vector<int> bins(10, 0);
  for (const auto& p : pts) bins[std::min(9, static_cast<int>((p.z() + 1.0) * 5.0))]++;
  for (int b : bins) EXPECT_NEAR(b, 4000, 4 * std::sqrt(4000.0));
}

TEST(RandomUniform, Deterministic) {
  const auto a = random_uniform(1000, 42);
  const auto b = random_uniform(1000, 42);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(std::memcmp(&a[i], &b[i], sizeof(SpherePoint)), 0);
  EXPECT_NE(random_uniform(10, 42).front(), random_uniform(10, 43).front());
}

TEST(RandomUniform, PrefixStable) {
  const auto a = random_uniform(50, 9);
  const auto b = random_uniform(500, 9);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(RandomUniform, RejectsZero) { EXPECT_THROW(random_uniform(0, 1), InvalidArgument); }

TEST(EqualArea, SinglePointIsNorthPole) {
  const auto pts = equal_area(1);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], SpherePoint(0, 0, 1));
}

TEST(EqualArea, TwoPointsAreAntipodal) {
  const auto pts = equal_area(2);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(pts[0].dot(pts[1]), -1.0, 1e-15);
}

TEST(EqualArea, ReturnsRequestedCount) {
  for (std::size_t m = 1; m <= 600; ++m) EXPECT_EQ(equal_area(m).size(), m) << m;
  EXPECT_EQ(equal_area(4000).size(), 4000u);
}

TEST(EqualArea, CellsHaveEqualArea) {
  for (std::size_t m = 1; m <= 2000; ++m) {
    const auto part = equal_area_partition(m);
    ASSERT_EQ(part.boundaries.size(), part.regions.size() + 1);
    std::size_t total = 0;
    double area = 0.0;
    const double cell = 4.0 * kPi / static_cast<double>(m);
    for (std::size_t z = 0; z < part.regions.size(); ++z) {
      ASSERT_GT(part.regions[z], 0u) << "m=" << m;
      const double zone = zone_area(part.boundaries[z], part.boundaries[z + 1]);
      EXPECT_NEAR(zone / static_cast<double>(part.regions[z]), cell, 1e-12) << "m=" << m << " zone " << z;
      total += part.regions[z];
      area += zone;
    }
    EXPECT_EQ(total, m);
    EXPECT_NEAR(area, 4.0 * kPi, 1e-12);
  }
}

TEST(EqualArea, BoundariesIncrease) {
  for (std::size_t m : {3u, 10u, 77u, 500u, 1999u}) {
    const auto part = equal_area_partition(m);
    for (std::size_t z = 0; z + 1 < part.boundaries.size(); ++z) EXPECT_LT(part.boundaries[z], part.boundaries[z + 1]);
    EXPECT_EQ(part.boundaries.front(), 0.0);
    EXPECT_EQ(part.boundaries.back(), kPi);
  }
}

TEST(EqualArea, TenPointGolden) {
  // Cap of area 4pi/10 has colatitude 2 asin(sqrt(1/10)); two collars of four
  // cells split at the equator; the lower collar is rotated by a quarter turn
  // per cell width (offset 1/8 of a full turn).
  const auto part = equal_area_partition(10);
  EXPECT_EQ(part.regions, (std::vector<std::size_t>{1, 4, 4, 1}));
  const double cap = 2.0 * std::asin(std::sqrt(0.1));
  EXPECT_NEAR(part.boundaries[1], cap, 1e-15);
  EXPECT_NEAR(part.boundaries[2], kPi / 2, 1e-15);

  const auto pts = equal_area(10);
  const double upper = 0.5 * (cap + kPi / 2);
  for (int i = 0; i < 4; ++i) {
    const auto expect = SpherePoint::from_spherical(upper, (i + 0.5) * kPi / 2);
    EXPECT_NEAR(pts[1 + i].chordal_distance(expect), 0.0, 1e-14) << i;
    const auto lower = SpherePoint::from_spherical(kPi - upper, (i + 1) * kPi / 2);
    EXPECT_NEAR(pts[5 + i].chordal_distance(lower), 0.0, 1e-14) << i;
  }
  EXPECT_EQ(pts.back(), SpherePoint(0, 0, -1));
}

TEST(EqualArea, RegionCountGoldens) {
  EXPECT_EQ(equal_area_partition(3).regions, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(equal_area_partition(6).regions, (std::vector<std::size_t>{1, 4, 1}));
  EXPECT_EQ(equal_area_partition(33).regions, (std::vector<std::size_t>{1, 6, 10, 9, 6, 1}));
  EXPECT_EQ(equal_area_partition(100).regions, (std::vector<std::size_t>{1, 6, 11, 15, 17, 17, 15, 11, 6, 1}));
}

TEST(EqualArea, PointsAreDistinct) {
  for (std::size_t m = 2; m <= 2000; ++m) {
    auto pts = equal_area(m);
    std::sort(pts.begin(), pts.end(), [](const SpherePoint& a, const SpherePoint& b) { return a.coords() < b.coords(); });
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      ASSERT_GT(pts[i].chordal_distance(pts[i + 1]), 1e-9) << "m=" << m;
    }
  }
}

TEST(EqualArea, MinimumSeparationScalesLikeCellDiameter) {
  for (std::size_t m : {2u, 17u, 250u, 1000u, 2000u}) {
    const auto pts = equal_area(m);
    double dmin = 10.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) dmin = std::min(dmin, pts[i].geodesic_distance(pts[j]));
    }
    EXPECT_GT(dmin, 0.0);
    EXPECT_GT(dmin, 0.4 * std::sqrt(4.0 * kPi / static_cast<double>(m))) << "m=" << m;
  }
}

TEST(EqualArea, Deterministic) { EXPECT_EQ(equal_area(777), equal_area(777)); }

TEST(EqualArea, IntegratesLowDegreeApproximately) {
  // Equal-area centres are a good equal-weight design, so low-degree
  // harmonics integrate to nearly zero.
  const auto rule = equal_weight_rule(equal_area(4000), Provenance::equal_area);
  const auto report = exactness_degree(rule, 4, 1e-2);
  EXPECT_GE(report.degree, 4);
}

TEST(QuadratureRuleType, Validation) {
  EXPECT_THROW(QuadratureRule({}, {}, Provenance::loaded), InvalidArgument);
  EXPECT_THROW(QuadratureRule({SpherePoint()}, {1.0, 2.0}, Provenance::loaded), InvalidArgument);
  EXPECT_THROW(QuadratureRule({SpherePoint()}, {0.0}, Provenance::loaded), InvalidArgument);
  EXPECT_THROW(QuadratureRule({SpherePoint()}, {-1.0}, Provenance::loaded), InvalidArgument);
  EXPECT_THROW(QuadratureRule({SpherePoint()}, {std::nan("")}, Provenance::loaded), InvalidArgument);
  const QuadratureRule r({SpherePoint(), SpherePoint(1, 0, 0)}, {1.0, 3.0}, Provenance::loaded);
  EXPECT_DOUBLE_EQ(r.weight_sum(), 4.0);
  EXPECT_DOUBLE_EQ(r.scaled(2.5).weight_sum(), 10.0);
  EXPECT_EQ(r.provenance(), Provenance::loaded);
  EXPECT_EQ(to_string(Provenance::equal_area), "equal_area");
}

TEST(EqualWeightRule, Weights) {
  const auto rule = equal_weight_rule(random_uniform(8, 1));
  for (double w : rule.weights()) EXPECT_DOUBLE_EQ(w, kPi / 2);
  const auto big = equal_weight_rule(random_uniform(12345, 2));
  EXPECT_NEAR(big.weight_sum(), 4.0 * kPi, 1e-12);
  EXPECT_NEAR(apply(big, [](const SpherePoint&) { return 1.0; }), 4.0 * kPi, 1e-12);
  EXPECT_THROW(equal_weight_rule({}), InvalidArgument);
}

TEST(GaussLegendreNodes, MatchGolubWelsch) {
  for (int order : {1, 2, 3, 7, 20, 64, 150}) {
    std::vector<double> t, w;
    oracle::golub_welsch(order, t, w);
    const auto gl = gauss_legendre(order);
    ASSERT_EQ(gl.nodes.size(), static_cast<std::size_t>(order));
    std::vector<std::pair<double, double>> a, b;
    for (int i = 0; i < order; ++i) {
      a.emplace_back(gl.nodes[i], gl.weights[i]);
      b.emplace_back(t[i], w[i]);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (int i = 0; i < order; ++i) {
      EXPECT_NEAR(a[i].first, b[i].first, 1e-12) << order;
      EXPECT_NEAR(a[i].second, b[i].second, 1e-12) << order;
    }
  }
  EXPECT_THROW(gauss_legendre(0), InvalidArgument);
}

TEST(ProductGauss, IntegratesConstants) {
  for (int n : {1, 2, 5, 40}) {
    const auto rule = product_gauss_rule(n);
    EXPECT_EQ(rule.size(), static_cast<std::size_t>(2 * n * n));
    EXPECT_NEAR(apply(rule, [](const SpherePoint&) { return 1.0; }), 4.0 * kPi, 1e-13);
    EXPECT_EQ(rule.known_exactness(), 2 * n - 1);
    EXPECT_EQ(rule.provenance(), Provenance::gauss_product);
  }
}

TEST(ProductGauss, AnnihilatesHarmonicsUpToExactness) {
  for (int N : {1, 3, 6, 10}) {
    const auto rule = product_gauss_rule(N);
    const int top = 2 * N - 1;
    std::vector<double> integral(basis_size(top), 0.0);
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const auto y = eval_basis(top, rule.points()[j]);
      for (std::size_t i = 0; i < y.size(); ++i) integral[i] += rule.weights()[j] * y[i];
    }
    for (std::size_t i = 1; i < integral.size(); ++i) EXPECT_NEAR(integral[i], 0.0, 1e-11) << "N=" << N << " i=" << i;
  }
}

TEST(ProductGauss, SinglePolarNodeIsExactForLinear) {
  const auto rule = product_gauss_rule(1);
  ASSERT_EQ(rule.size(), 2u);
  for (int c = 0; c < 3; ++c) {
    EXPECT_NEAR(apply(rule, [c](const SpherePoint& p) { return p.coords()[c]; }), 0.0, 1e-15);
  }
}

TEST(ProductGauss, MeasuredExactness) {
  for (int N : {1, 2, 4, 8, 12}) {
    EXPECT_GE(exactness_degree(product_gauss_rule(N), 2 * N + 2).degree, 2 * N - 1) << N;
  }
}

TEST(ProductGauss, ForDegree) {
  EXPECT_GE(product_gauss_rule_for_degree(0).known_exactness().value(), 0);
  for (int deg = 0; deg <= 30; ++deg) {
    const auto rule = product_gauss_rule_for_degree(deg);
    EXPECT_GE(*rule.known_exactness(), deg);
    EXPECT_LE(*rule.known_exactness(), deg + 2);
  }
  EXPECT_THROW(product_gauss_rule_for_degree(-1), InvalidArgument);
}

TEST(PointFileParse, ThreeColumns) {
  std::istringstream in("# comment\n1 0 0\n\n  0 1 0\n0\t0\t1\n+0 -0 -1\n");
  const auto file = parse_pointset(in, "three.txt");
  EXPECT_EQ(file.points.size(), 4u);
  EXPECT_FALSE(file.weights.has_value());
  EXPECT_EQ(file.points[3], SpherePoint(0, 0, -1));
  const auto rule = equal_weight_rule(file.points);
  EXPECT_DOUBLE_EQ(rule.weights()[0], kPi);
}

TEST(PointFileParse, FourColumns) {
  std::istringstream in("1 0 0 2\n0 0 1 1.5e0\n");
  const auto file = parse_pointset(in, "four.txt", true);
  ASSERT_TRUE(file.weights.has_value());
  EXPECT_EQ(*file.weights, (std::vector<double>{2.0, 1.5}));
}

TEST(PointFileParse, NearUnitRowsAreNormalized) {
  std::istringstream in("1.0000005 0 0\n");
  const auto file = parse_pointset(in, "near.txt");
  EXPECT_EQ(file.points[0].x(), 1.0);
}

TEST(PointFileParse, Errors) {
  EXPECT_EQ(parse_error_message("1 0 0 1\n0 1 0 0\n"), "pts.txt:2: weight 0 is not positive");
  EXPECT_NE(parse_error_message("1 0 0 1\n0 1 0 -3\n").find("pts.txt:2:"), std::string::npos);
  const std::string norm = parse_error_message("1 0 0\n0 0 1.002\n");
  EXPECT_NE(norm.find("pts.txt:2:"), std::string::npos);
  EXPECT_NE(norm.find("norm 1.002"), std::string::npos);
  EXPECT_NE(parse_error_message("1 0 0\n0 x 1\n").find("pts.txt:2: not a number: 'x'"), std::string::npos);
  EXPECT_NE(parse_error_message("1 0\n").find("pts.txt:1: expected 3 or 4 columns"), std::string::npos);
  EXPECT_NE(parse_error_message("1 0 0\n0 1 0 1\n").find("pts.txt:2: column count"), std::string::npos);
  EXPECT_NE(parse_error_message("1 0 0\n", true).find("pts.txt:1: expected a weight column"), std::string::npos);
  EXPECT_NE(parse_error_message("# only comments\n").find("no points found"), std::string::npos);
  EXPECT_NE(parse_error_message("1 0 0\n0 1 0 nan\n").find("pts.txt:2:"), std::string::npos);
}

TEST(PointFileParse, ErrorCarriesLocation) {
  std::istringstream in("1 0 0\n\n\n0 0 2\n");
  try {
    parse_pointset(in, "loc.txt");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.source(), "loc.txt");
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(PointFileParse, WriteReadRoundTrip) {
  const auto pts = random_uniform(300, 77);
  std::vector<double> w(pts.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 0.01 + 1e-3 * static_cast<double>(i) / 7.0;
  std::stringstream buf;
  write_pointset(buf, pts, w);
  const auto file = parse_pointset(buf, "roundtrip");
  ASSERT_EQ(file.points.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_NEAR(file.points[i].chordal_distance(pts[i]), 0.0, 1e-15);
    EXPECT_EQ((*file.weights)[i], w[i]);
  }
}

TEST(PointFileLoad, FromDisk) {
  const auto path = std::filesystem::temp_directory_path() / "sphinterp_load_test.txt";
  {
    std::ofstream out(path);
    out << "1 0 0\n0 1 0\n0 0 1\n-1 0 0\n";
  }
  const auto rule = load_rule(path);
  EXPECT_EQ(rule.size(), 4u);
  EXPECT_EQ(rule.provenance(), Provenance::loaded);
  EXPECT_DOUBLE_EQ(rule.weights()[0], kPi);
  std::filesystem::remove(path);
  EXPECT_THROW(load_pointset(path), InvalidArgument);
}
