#include "sphinterp_app/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <regex>

#include "sphinterp/analysis.hpp"
#include "sphinterp/errors.hpp"
#include "sphinterp/harmonics.hpp"
#include "sphinterp/hyperinterp.hpp"
#include "sphinterp/quadrature.hpp"
#include "sphinterp/testfuncs.hpp"

#ifndef SPHINTERP_DEFAULT_CORPUS
#define SPHINTERP_DEFAULT_CORPUS "data"
#endif

namespace sphinterp::app {
namespace {

using Sink = std::vector<CheckResult>;

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

SpherePoint random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  for (;;) {
    const double x = g(rng), y = g(rng), z = g(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r > 1e-3) return SpherePoint(x / r, y / r, z / r);
  }
}

std::vector<double> random_coefficients(std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> c(count);
  for (auto& v : c) v = g(rng);
  return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// File-name convention of the corpus: tdesign_t<t>.txt and name_t<t>.txt
// carry their exactness degree.
std::optional<int> declared_strength(const std::filesystem::path& p) {
  static const std::regex re(R"(_t(\d+)$)");
  std::smatch m;
  const std::string stem = p.stem().string();
  if (std::regex_search(stem, m, re)) return std::stoi(m[1]);
  return std::nullopt;
}

struct NamedRule {
  std::string label;
  QuadratureRule rule;
  int n;
};

std::vector<NamedRule> audit_rules(const std::filesystem::path& corpus, Sink& out, const std::string& check) {
  std::vector<NamedRule> rules;
  rules.push_back({"random m=3000 n=6", equal_weight_rule(random_uniform(3000, 31), Provenance::random), 6});
  rules.push_back({"equal-area m=1500 n=10", equal_weight_rule(equal_area(1500), Provenance::equal_area), 10});
  const auto design = corpus / "tdesign_t20.txt";
  try {
    rules.push_back({"tdesign t=20 n=10", load_rule(design), 10});
  } catch (const Error& e) {
    out.push_back({check, design.filename().string(), false, e.what()});
  }
  return rules;
}

void check_addition(const CheckOptions&, Sink& out) {
  std::mt19937_64 rng(101);
  const int n = 40;
  const HarmonicBasis basis(n);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const SpherePoint x = random_point(rng);
    const SpherePoint y = random_point(rng);
    const auto bx = basis.evaluate(x);
    const auto by = basis.evaluate(y);
    for (int l = 0; l <= n; ++l) {
      const std::size_t lo = l == 0 ? 0 : basis_size(l - 1);
      double s = 0.0;
      for (std::size_t i = lo; i < basis_size(l); ++i) s += bx[i] * by[i];
      const double expected = (2.0 * l + 1.0) / (4.0 * std::numbers::pi) * legendre_normalized(l, std::clamp(x.dot(y), -1.0, 1.0));
      worst = std::max(worst, std::abs(s - expected) / ((2.0 * l + 1.0) / (4.0 * std::numbers::pi)));
    }
  }
  out.push_back({"addition", "degree <= 40, 50 pairs", worst < 1e-11, fmt("max relative deviation %.3e", worst)});
}

void check_kernel(const CheckOptions&, Sink& out) {
  std::mt19937_64 rng(102);
  for (const int n : {5, 20}) {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const SpherePoint x = random_point(rng);
      const SpherePoint y = random_point(rng);
      const double via_basis = dot(eval_basis(n, x), eval_basis(n, y));
      worst = std::max(worst, std::abs(kernel_eval(n, x, y) - via_basis));
    }
    const double scale = static_cast<double>(basis_size(n)) / (4.0 * std::numbers::pi);
    out.push_back({"kernel", "n=" + std::to_string(n), worst < 1e-12 * scale,
                   fmt("max |G_n - sum Y Y| = %.3e", worst)});
  }
}

void check_exactness(const CheckOptions& opt, Sink& out) {
  for (const int order : {4, 8, 16}) {
    const auto rule = product_gauss_rule(order);
    double worst = 0.0;
    for (int n = 0; n <= order - 1; ++n) worst = std::max(worst, mz_constant(rule, n).eta);
    out.push_back({"exactness", "gauss-product N=" + std::to_string(order), worst < 1e-10,
                   fmt("max eta over n <= N-1: %.3e", worst)});
  }
  const auto degree = exactness_degree(product_gauss_rule(5), 14).degree;
  out.push_back({"exactness", "gauss-product N=5 degree", degree == 9, "exact to degree " + std::to_string(degree)});
  (void)opt;
}

void check_reproduction(const CheckOptions&, Sink& out) {
  const TestFunction f1 = TestFunction::f1();
  for (const int n : {2, 6, 10}) {
    const auto h = fit(product_gauss_rule(n + 2), f1, n);
    const double err = l2_error([&](const SpherePoint& x) { return h(x); }, f1, product_gauss_rule(n + 8));
    out.push_back({"reproduction", "f1 n=" + std::to_string(n), err < 1e-10, fmt("||U_n f1 - f1|| = %.3e", err)});
  }
}

void check_lemma31(const CheckOptions& opt, Sink& out) {
  std::mt19937_64 rng(103);
  for (const auto& rc : audit_rules(opt.corpus, out, "lemma31")) {
    const Eigen::MatrixXd gram = gram_matrix(rc.rule, rc.n);
    const double eta = mz_report_from_gram(gram, rc.n).eta;
    if (!(eta < 1.0)) {
      out.push_back({"lemma31", rc.label, false, fmt("eta = %.4f is not < 1", eta)});
      continue;
    }
    const HarmonicBasis basis(rc.n);
    std::vector<double> y(rc.rule.size());
    std::vector<double> row(basis.size());
    double worst = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100; ++trial) {
      const auto alpha = random_coefficients(basis.size(), rng);
      for (std::size_t j = 0; j < y.size(); ++j) {
        basis.evaluate(rc.rule.points()[j], row);
        y[j] = dot(row, alpha);
      }
      const Hyperinterpolant h = fit(rc.rule, y, rc.n);
      const auto u = h.coefficients();
      const double chi2 = dot(alpha, alpha);
      const double inner = dot(u, alpha);
      const double unorm = std::sqrt(dot(u, u));
      double err2 = 0.0;
      for (std::size_t i = 0; i < alpha.size(); ++i) err2 += (u[i] - alpha[i]) * (u[i] - alpha[i]);
      const double chi = std::sqrt(chi2);
      // Each margin is (lhs - rhs) normalized by ||chi||^2; must stay below slack.
      const double margins[] = {
          ((1 - eta) * chi2 - inner) / chi2,
          (inner - (1 + eta) * chi2) / chi2,
          ((1 - eta) * chi - unorm) / chi,
          (unorm - (1 + eta) * chi) / chi,
          (err2 - (eta * eta + 4 * eta) * chi2) / chi2,
      };
      for (const double m : margins) worst = std::max(worst, m);
    }
    out.push_back({"lemma31", rc.label, worst <= 1e-8,
                   fmt("eta = %.4f, worst margin %.3e", eta, worst)});
  }
}

void check_stability(const CheckOptions& opt, Sink& out) {
  const std::vector<TestFunction> funcs{TestFunction::f1(), TestFunction::f2(), TestFunction::f3(),
                                        TestFunction::f4(0), TestFunction::f4(2), TestFunction::f4(4)};
  std::vector<double> sup;
  for (const auto& f : funcs) sup.push_back(uniform_norm_refined(f, 4000));
  for (const auto& rc : audit_rules(opt.corpus, out, "stability")) {
    const double eta = mz_constant(rc.rule, rc.n).eta;
    if (!(eta < 1.0)) {
      out.push_back({"stability", rc.label, false, fmt("eta = %.4f is not < 1", eta)});
      continue;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < funcs.size(); ++i) {
      const double norm = fit(rc.rule, funcs[i], rc.n).l2_norm();
      const double bound = std::sqrt(1.0 + eta) * std::sqrt(rc.rule.weight_sum()) * sup[i];
      worst = std::max(worst, norm / bound);
    }
    out.push_back({"stability", rc.label, worst <= 1.0 + 1e-6, fmt("max ||U_n f|| / bound = %.4f", worst)});
  }
}

void check_corpus(const CheckOptions& opt, Sink& out) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(opt.corpus, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  if (ec) {
    out.push_back({"corpus", opt.corpus.string(), false, "cannot read corpus directory: " + ec.message()});
    return;
  }
  if (files.empty()) {
    out.push_back({"corpus", opt.corpus.string(), false, "no point files found"});
    return;
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string label = path.filename().string();
    try {
      const QuadratureRule rule = load_rule(path);
      const auto t = declared_strength(path);
      if (!t) {
        out.push_back({"corpus", label, true, std::to_string(rule.size()) + " points"});
        continue;
      }
      const int degree = exactness_degree(rule, *t + 1, 1e-10).degree;
      out.push_back({"corpus", label, degree >= *t,
                     std::to_string(rule.size()) + " points, exact to degree " + std::to_string(degree) +
                         " (declared " + std::to_string(*t) + ")"});
    } catch (const ParseError& e) {
      out.push_back({"corpus", label, false, e.what()});
    } catch (const Error& e) {
      out.push_back({"corpus", label, false, path.string() + ": " + e.what()});
    }
  }
}

void check_monotone(const CheckOptions&, Sink& out) {
  const auto rule = equal_weight_rule(random_uniform(1000, 104), Provenance::random);
  const Eigen::MatrixXd gram = gram_matrix(rule, 14);
  double prev = 0.0;
  int first_drop = -1;
  for (int n = 0; n <= 14; ++n) {
    const auto dim = static_cast<Eigen::Index>(basis_size(n));
    const double eta = mz_report_from_gram(gram.topLeftCorner(dim, dim), n).eta;
    if (eta < prev - 1e-12 && first_drop < 0) first_drop = n;
    prev = eta;
  }
  out.push_back({"monotone", "random m=1000 n=0..14", first_drop < 0,
                 first_drop < 0 ? fmt("eta nondecreasing, eta(14) = %.4f", prev)
                                : "eta decreased at n=" + std::to_string(first_drop)});
}

using CheckFn = std::function<void(const CheckOptions&, Sink&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r{
      {"addition", check_addition},   {"kernel", check_kernel},       {"exactness", check_exactness},
      {"reproduction", check_reproduction}, {"lemma31", check_lemma31}, {"stability", check_stability},
      {"corpus", check_corpus},       {"monotone", check_monotone},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::filesystem::path default_corpus_dir() {
  if (const char* env = std::getenv("SPHINTERP_CORPUS")) return env;
  return SPHINTERP_DEFAULT_CORPUS;
}

std::vector<CheckResult> run_checks(const CheckOptions& options) {
  for (const auto& name : options.filter) {
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
      std::string known;
      for (const auto& n : check_names()) known += (known.empty() ? "" : ", ") + n;
      throw InvalidArgument("unknown check '" + name + "' (known: " + known + ")");
    }
  }
  Sink out;
  for (const auto& [name, fn] : registry()) {
    if (!options.filter.empty() &&
        std::find(options.filter.begin(), options.filter.end(), name) == options.filter.end()) {
      continue;
    }
    try {
      fn(options, out);
    } catch (const std::exception& e) {
      out.push_back({name, "(aborted)", false, e.what()});
    }
  }
  return out;
}

}  // namespace sphinterp::app
