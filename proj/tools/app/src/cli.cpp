#include "sphinterp_app/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "sphinterp/errors.hpp"
#include "sphinterp/hyperinterp.hpp"
#include "sphinterp/pointsets.hpp"
#include "sphinterp/quadrature.hpp"
#include "sphinterp/random.hpp"
#include "sphinterp/testfuncs.hpp"
#include "sphinterp_app/checks.hpp"
#include "sphinterp_app/config.hpp"
#include "sphinterp_app/sweep.hpp"

namespace sphinterp::app {
namespace {

struct RuleOptions {
  std::string kind = "random";
  std::size_t m = 0;
  std::uint64_t seed = 1;
  int order = 0;
  std::string path;
  std::string weights = "auto";
};

void add_rule_options(CLI::App* cmd, RuleOptions& o, const char* kind_flag) {
  cmd->add_option(kind_flag, o.kind, "random, equal-area, gauss-product or load")
      ->check(CLI::IsMember({"random", "equal-area", "gauss-product", "load"}));
  cmd->add_option("--m", o.m, "number of points (random, equal-area)");
  cmd->add_option("--seed", o.seed, "seed for random points");
  cmd->add_option("--order", o.order, "polar order N of the product Gauss rule");
  cmd->add_option("--path", o.path, "point file (load)");
}

QuadratureRule build_rule(const RuleOptions& o, std::uint64_t seed) {
  if (o.kind == "random" || o.kind == "equal-area") {
    if (o.m == 0) throw InvalidArgument("--m is required and must be >= 1 for " + o.kind + " points");
    return o.kind == "random" ? equal_weight_rule(random_uniform(o.m, seed), Provenance::random)
                              : equal_weight_rule(equal_area(o.m), Provenance::equal_area);
  }
  if (o.kind == "gauss-product") {
    if (o.order < 1) throw InvalidArgument("--order is required and must be >= 1 for gauss-product");
    return product_gauss_rule(o.order);
  }
  if (o.path.empty()) throw InvalidArgument("--path is required for load");
  const PointFile file = load_pointset(o.path);
  if (file.weights && o.weights != "equal") {
    return QuadratureRule(file.points, *file.weights, Provenance::loaded);
  }
  if (o.weights == "file") throw InvalidArgument(o.path + " has no weight column");
  return equal_weight_rule(file.points, Provenance::loaded);
}

void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write " + path);
  body(file);
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_points(const RuleOptions& o, const std::string& out_path, std::ostream& out) {
  const QuadratureRule rule = build_rule(o, o.seed);
  const bool equal = rule.provenance() == Provenance::random || rule.provenance() == Provenance::equal_area;
  bool weighted = !equal;
  if (o.kind == "load") weighted = load_pointset(o.path).weights.has_value() && o.weights != "equal";
  with_output(out_path, out, [&](std::ostream& s) {
    if (weighted) {
      write_pointset(s, rule.points(), rule.weights());
    } else {
      write_pointset(s, rule.points());
    }
  });
  return kExitOk;
}

int cmd_eta(const RuleOptions& o, int n, int repetitions, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
  if (n < 0) throw InvalidArgument("--n must be >= 0");
  if (repetitions < 1) throw InvalidArgument("--repetitions must be >= 1");
  const bool random = o.kind == "random";
  if (!random) repetitions = 1;
  std::vector<double> etas;
  with_output(out_path, out, [&](std::ostream& s) {
    s << "source,m,n,seed,eta,lambda_min,lambda_max,dim,rank_deficient\n";
    for (int rep = 0; rep < repetitions; ++rep) {
      const std::uint64_t seed = random ? (rep == 0 ? o.seed : derive_seed(o.seed, {static_cast<std::uint64_t>(rep)})) : 0;
      const QuadratureRule rule = build_rule(o, seed);
      const MZReport r = mz_constant(rule, n);
      s << o.kind << ',' << rule.size() << ',' << n << ',' << seed << ',' << g17(r.eta) << ',' << g17(r.lambda_min)
        << ',' << g17(r.lambda_max) << ',' << r.dim << ',' << (r.rank_deficient ? "true" : "false") << '\n';
      etas.push_back(r.eta);
      if (r.rank_deficient) {
        err << "warning: rank-deficient Gram matrix (lambda_min = " << r.lambda_min << ", m = " << rule.size()
            << ", dim = " << r.dim << ")\n";
      } else if (!r.usable()) {
        err << "warning: eta = " << r.eta << " >= 1, the rule has no MZ property at degree " << n << "\n";
      }
    }
  });
  if (etas.size() > 1) {
    std::sort(etas.begin(), etas.end());
    const std::size_t k = etas.size();
    const double median = k % 2 ? etas[k / 2] : 0.5 * (etas[k / 2 - 1] + etas[k / 2]);
    err << "median eta over " << k << " seeds: " << median << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, bool force, const std::string& output, std::ostream& out,
              std::ostream& err) {
  ExperimentConfig cfg = load_config(config_path);
  if (force) cfg.force = true;
  if (!output.empty()) cfg.output = output;
  if (cfg.output.empty()) throw InvalidArgument("no output path: set 'output' in the config or pass --output");
  const SweepResult result = run_sweep(cfg);
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  const auto paths = write_outputs(result, cfg.output);
  out << "experiment " << cfg.experiment << ": " << result.rows.size() << " rows, function "
      << TestFunction::parse(cfg.function, cfg.sigma).name() << ", points " << cfg.points.describe() << ", schedule "
      << schedule_formula(cfg.schedule) << ", reference order " << result.reference_order << "\n";
  print_summary(out, result);
  for (const auto& p : paths) out << "wrote " << p.string() << "\n";
  return kExitOk;
}

int cmd_check(const std::vector<std::string>& filter, const std::string& corpus, std::ostream& out) {
  CheckOptions opt;
  for (const auto& f : filter) {
    std::size_t start = 0;
    for (;;) {
      const auto comma = f.find(',', start);
      const std::string name = f.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!name.empty()) opt.filter.push_back(name);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  opt.corpus = corpus.empty() ? default_corpus_dir() : std::filesystem::path(corpus);
  const auto results = run_checks(opt);
  int failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.check << " [" << r.label << "] " << r.detail << "\n";
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_fit(const RuleOptions& o, const std::string& function, int sigma, int n, const std::string& out_path,
            std::ostream& out) {
  const QuadratureRule rule = build_rule(o, o.seed);
  const TestFunction f = TestFunction::parse(function, sigma);
  const Hyperinterpolant h = fit(rule, f, n);
  with_output(out_path, out, [&](std::ostream& s) { write_coefficients_csv(s, h); });
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperinterpolation on the 2-sphere with non-exact quadrature rules", "sphinterp"};
  app.require_subcommand(1);

  RuleOptions points_opt;
  std::string points_out;
  auto* points = app.add_subcommand("points", "generate or validate a point set");
  add_rule_options(points, points_opt, "--kind");
  points->get_option("--kind")->required();
  points->add_option("--weights", points_opt.weights, "auto, equal or file")
      ->check(CLI::IsMember({"auto", "equal", "file"}));
  points->add_option("--out", points_out, "output file (default stdout)");

  RuleOptions eta_opt;
  int eta_n = -1;
  int eta_reps = 1;
  std::string eta_out;
  auto* eta = app.add_subcommand("eta", "Marcinkiewicz-Zygmund constant of a rule");
  add_rule_options(eta, eta_opt, "--points");
  eta->add_option("--n", eta_n, "polynomial degree")->required();
  eta->add_option("--repetitions", eta_reps, "independent random seeds");
  eta->add_option("--weights", eta_opt.weights, "auto, equal or file")->check(CLI::IsMember({"auto", "equal", "file"}));
  eta->add_option("--out", eta_out, "output file (default stdout)");

  std::string sweep_config;
  bool sweep_force = false;
  std::string sweep_output;
  auto* sweep = app.add_subcommand("sweep", "run a convergence experiment from a config file");
  sweep->add_option("--config", sweep_config, "key = value experiment file")->required();
  sweep->add_flag("--force", sweep_force, "run cells with (n+1)^2 > m");
  sweep->add_option("--output", sweep_output, "override the output CSV path");

  std::vector<std::string> check_filter;
  std::string check_corpus;
  auto* check = app.add_subcommand("check", "run the invariant suite");
  check->add_option("--filter", check_filter, "check names, comma separated");
  check->add_option("--corpus", check_corpus, "directory of point files");

  RuleOptions fit_opt;
  std::string fit_function = "f1";
  int fit_sigma = 2;
  int fit_n = -1;
  std::string fit_out;
  auto* fitcmd = app.add_subcommand("fit", "hyperinterpolate a test function and print its coefficients");
  add_rule_options(fitcmd, fit_opt, "--points");
  fitcmd->add_option("--function", fit_function, "f1, f2, f3 or f4");
  fitcmd->add_option("--sigma", fit_sigma, "smoothness of f4");
  fitcmd->add_option("--n", fit_n, "polynomial degree")->required();
  fitcmd->add_option("--weights", fit_opt.weights, "auto, equal or file")
      ->check(CLI::IsMember({"auto", "equal", "file"}));
  fitcmd->add_option("--out", fit_out, "output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*points) return cmd_points(points_opt, points_out, out);
    if (*eta) return cmd_eta(eta_opt, eta_n, eta_reps, eta_out, out, err);
    if (*sweep) return cmd_sweep(sweep_config, sweep_force, sweep_output, out, err);
    if (*check) return cmd_check(check_filter, check_corpus, out);
    if (*fitcmd) return cmd_fit(fit_opt, fit_function, fit_sigma, fit_n, fit_out, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitBadInput;
}

}  // namespace sphinterp::app
