#pragma once

#include <array>
#include <string>
#include <string_view>

#include "sphinterp/sphere_point.hpp"

namespace sphinterp {

enum class TestFunctionId { F1, F2, F3, F4 };

/// The four benchmark functions on S^2:
///   F1  (x1 + x2 + x3)^2                         polynomial of degree 2
///   F2  |x1 + x2 + x3| + sin^2(1 + |x1 + x2 + x3|) continuous, not smooth
///   F3  Franke-type sum of four exponentials      C-infinity
///   F4  sum of six normalized Wendland functions centred at +-e_i,
///       lying in H^{sigma + 3/2}
class TestFunction {
 public:
  static TestFunction f1() { return TestFunction(TestFunctionId::F1, 0); }
  static TestFunction f2() { return TestFunction(TestFunctionId::F2, 0); }
  static TestFunction f3() { return TestFunction(TestFunctionId::F3, 0); }
  /// Throws InvalidArgument unless sigma is in {0, ..., 4}.
  static TestFunction f4(int sigma);

  /// Accepts "f1", "f2", "f3", "f4" (with `sigma`) and "f4s<sigma>".
  static TestFunction parse(std::string_view name, int sigma = 2);

  TestFunctionId id() const noexcept { return id_; }
  int sigma() const noexcept { return sigma_; }
  /// "f1", "f2", "f3" or "f4s<sigma>".
  std::string name() const;

  double operator()(const SpherePoint& x) const;

 private:
  TestFunction(TestFunctionId id, int sigma) : id_(id), sigma_(sigma) {}

  TestFunctionId id_;
  int sigma_;
};

double eval(const TestFunction& tf, const SpherePoint& x);

/// Support radius 3 (sigma + 1) Gamma(sigma + 1/2) / (2 Gamma(sigma + 1)).
double wendland_delta(int sigma);

/// Original compactly supported Wendland function on [0, 1].
double wendland_original(int sigma, double r);

/// Normalized Wendland function: wendland_original(sigma, r / delta_sigma).
double wendland_phi(int sigma, double r);

/// The six centres +-e_1, +-e_2, +-e_3 used by F4.
inline constexpr std::array<std::array<double, 3>, 6> kWendlandCentres{{
    {1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},
    {0.0, -1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, -1.0},
}};

}  // namespace sphinterp
