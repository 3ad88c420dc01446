#include "sphinterp/testfuncs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sphinterp {
namespace {

constexpr int kMaxSigma = 4;

void require_sigma(int sigma) {
  if (sigma < 0 || sigma > kMaxSigma) {
    throw InvalidArgument("Wendland smoothness sigma must be in 0..4, got " + std::to_string(sigma));
  }
}

double square(double v) { return v * v; }

double franke(const SpherePoint& p) {
  const double x = 9.0 * p.x();
  const double y = 9.0 * p.y();
  const double z = 9.0 * p.z();
  // The second term's y and z arguments are linear, not squared.
  return 0.75 * std::exp(-square(x - 2.0) / 4.0 - square(y - 2.0) / 4.0 - square(z - 2.0) / 4.0) +
         0.75 * std::exp(-square(x + 1.0) / 49.0 - (y + 1.0) / 10.0 - (z + 1.0) / 10.0) +
         0.5 * std::exp(-square(x - 7.0) / 4.0 - square(y - 3.0) / 4.0 - square(z - 5.0) / 4.0) -
         0.2 * std::exp(-square(x - 4.0) - square(y - 7.0) - square(z - 5.0));
}

double wendland_sum(int sigma, const SpherePoint& p) {
  double sum = 0.0;
  for (const auto& c : kWendlandCentres) {
    const double r = std::sqrt(square(c[0] - p.x()) + square(c[1] - p.y()) + square(c[2] - p.z()));
    sum += wendland_phi(sigma, r);
  }
  return sum;
}

}  // namespace

TestFunction TestFunction::f4(int sigma) {
  require_sigma(sigma);
  return TestFunction(TestFunctionId::F4, sigma);
}

TestFunction TestFunction::parse(std::string_view name, int sigma) {
  if (name == "f1") return f1();
  if (name == "f2") return f2();
  if (name == "f3") return f3();
  if (name == "f4") return f4(sigma);
  if (name.size() == 4 && name.substr(0, 3) == "f4s" && name[3] >= '0' && name[3] <= '9') {
    return f4(name[3] - '0');
  }
  throw InvalidArgument("unknown test function '" + std::string(name) + "' (expected f1, f2, f3, f4 or f4s<sigma>)");
}

std::string TestFunction::name() const {
  switch (id_) {
    case TestFunctionId::F1: return "f1";
    case TestFunctionId::F2: return "f2";
    case TestFunctionId::F3: return "f3";
    case TestFunctionId::F4: return "f4s" + std::to_string(sigma_);
  }
  return "?";
}

double TestFunction::operator()(const SpherePoint& x) const {
  switch (id_) {
    case TestFunctionId::F1: return square(x.x() + x.y() + x.z());
    case TestFunctionId::F2: {
      const double s = std::abs(x.x() + x.y() + x.z());
      return s + square(std::sin(1.0 + s));
    }
    case TestFunctionId::F3: return franke(x);
    case TestFunctionId::F4: return wendland_sum(sigma_, x);
  }
  return 0.0;
}

double eval(const TestFunction& tf, const SpherePoint& x) { return tf(x); }

double wendland_delta(int sigma) {
  require_sigma(sigma);
  // Gamma(sigma + 1/2) = (2 sigma)! sqrt(pi) / (4^sigma sigma!), Gamma(sigma + 1) = sigma!
  double factorial = 1.0;
  double factorial_2s = 1.0;
  for (int i = 1; i <= sigma; ++i) factorial *= i;
  for (int i = 1; i <= 2 * sigma; ++i) factorial_2s *= i;
  const double gamma_half = factorial_2s * std::sqrt(std::numbers::pi) / (std::pow(4.0, sigma) * factorial);
  return 3.0 * (sigma + 1.0) * gamma_half / (2.0 * factorial);
}

double wendland_original(int sigma, double r) {
  require_sigma(sigma);
  if (r < 0.0) throw InvalidArgument("wendland: radius must be >= 0");
  const double t = std::max(1.0 - r, 0.0);
  switch (sigma) {
    case 0: return t * t;
    case 1: return std::pow(t, 4) * (4.0 * r + 1.0);
    case 2: return std::pow(t, 6) * (35.0 * r * r + 18.0 * r + 3.0) / 3.0;
    case 3: return std::pow(t, 8) * (32.0 * r * r * r + 25.0 * r * r + 8.0 * r + 1.0);
    default:
      return std::pow(t, 10) * (429.0 * r * r * r * r + 450.0 * r * r * r + 210.0 * r * r + 50.0 * r + 5.0) / 5.0;
  }
}

double wendland_phi(int sigma, double r) { return wendland_original(sigma, r / wendland_delta(sigma)); }

}  // namespace sphinterp
