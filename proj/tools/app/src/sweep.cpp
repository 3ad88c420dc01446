#include "sphinterp_app/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>

#include "sphinterp/analysis.hpp"
#include "sphinterp/hyperinterp.hpp"
#include "sphinterp/quadrature.hpp"
#include "sphinterp/random.hpp"
#include "sphinterp/testfuncs.hpp"

namespace sphinterp::app {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kSupGrid = 20000;
constexpr double kReferenceTolerance = 0.01;

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Group {
  std::size_t m = 0;
  int repetition = 0;
  std::vector<int> degrees;
};

QuadratureRule make_rule(const ExperimentConfig& cfg, std::size_t m, std::uint64_t seed) {
  switch (cfg.points.kind) {
    case PointKind::random: return equal_weight_rule(random_uniform(m, seed), Provenance::random);
    case PointKind::equal_area: return equal_weight_rule(equal_area(m), Provenance::equal_area);
    case PointKind::file: return load_rule(cfg.points.path);
  }
  throw InvalidArgument("unknown point source");
}

int default_reference_order(int n_max) { return std::max(100, n_max + 11); }

}  // namespace

std::uint64_t cell_seed(std::uint64_t base, std::size_t m, int repetition) {
  return derive_seed(base, {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(repetition)});
}

double stability_bound(const SweepRow& row, double sup_norm) {
  return std::sqrt(1.0 + row.eta) * std::sqrt(row.weight_sum) * sup_norm;
}

SweepResult run_sweep(const ExperimentConfig& input) {
  ExperimentConfig cfg = input;
  cfg.validate();
  SweepResult result;

  // A point file fixes m; read it once to learn the size.
  if (cfg.points.kind == PointKind::file) {
    cfg.sizes = {load_rule(cfg.points.path).size()};
  }
  const auto cells = cfg.grid();
  for (const auto& [n, m] : cells) {
    if (m == 0) throw InvalidArgument("schedule gives m = 0 at n = " + std::to_string(n));
    if (basis_size(n) > m && !cfg.force) {
      throw InvalidArgument("cell n=" + std::to_string(n) + ", m=" + std::to_string(m) + " has (n+1)^2 = " +
                            std::to_string(basis_size(n)) +
                            " > m, so the Gram matrix is singular; pass --force to run it anyway");
    }
  }
  result.config = cfg;

  const TestFunction f = TestFunction::parse(cfg.function, cfg.sigma);
  const int reps = cfg.effective_repetitions();

  std::vector<int> degrees;
  for (const auto& cell : cells) degrees.push_back(cell.first);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  const int n_max = degrees.back();

  // Exact projection coefficients and tails on a product-Gauss reference,
  // cross-checked against a rule of twice the order.
  result.reference_order = cfg.reference_order > 0 ? cfg.reference_order : default_reference_order(n_max);
  if (2 * result.reference_order - 1 < 2 * n_max) {
    throw InvalidArgument("reference_order " + std::to_string(result.reference_order) +
                          " is too small for degree " + std::to_string(n_max));
  }
  const auto coarse = reference_projections(f, degrees, product_gauss_rule(result.reference_order));
  const auto fine = reference_projections(f, degrees, product_gauss_rule(2 * result.reference_order));
  std::map<int, const ReferenceProjection*> projection;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    projection[degrees[i]] = &fine[i];
    const double diff = std::abs(coarse[i].tail - fine[i].tail);
    if (diff > 1e-12) result.reference_change = std::max(result.reference_change, diff / fine[i].tail);
  }
  if (result.reference_change > kReferenceTolerance) {
    result.warnings.push_back("reference tail changed by " + std::to_string(100 * result.reference_change) +
                              "% on doubling the reference order; raise reference_order");
  }
  result.sup_norm = uniform_norm_refined(f, kSupGrid);

  std::map<std::pair<std::size_t, int>, Group> by_key;
  for (const auto& [n, m] : cells) {
    for (int rep = 0; rep < reps; ++rep) {
      auto& g = by_key[{m, rep}];
      g.m = m;
      g.repetition = rep;
      g.degrees.push_back(n);
    }
  }
  std::vector<Group> groups;
  for (auto& [key, g] : by_key) groups.push_back(std::move(g));

  std::vector<std::vector<SweepRow>> group_rows(groups.size());
  std::vector<std::string> failures(groups.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t gi = 0; gi < static_cast<std::ptrdiff_t>(groups.size()); ++gi) {
    try {
      const Group& g = groups[static_cast<std::size_t>(gi)];
      const auto start = Clock::now();
      const std::uint64_t seed = cfg.points.kind == PointKind::random ? cell_seed(cfg.seed, g.m, g.repetition) : 0;
      const QuadratureRule rule = make_rule(cfg, g.m, seed);
      const int top = *std::max_element(g.degrees.begin(), g.degrees.end());
      const std::vector<double> samples = sample(rule, f);
      const Hyperinterpolant h = fit(rule, samples, top);
      const Eigen::MatrixXd gram = gram_matrix(rule, top);
      const double shared = std::chrono::duration<double>(Clock::now() - start).count();

      for (const int n : g.degrees) {
        const auto t0 = Clock::now();
        const auto dim = static_cast<Eigen::Index>(basis_size(n));
        const MZReport report = mz_report_from_gram(gram.topLeftCorner(dim, dim), n);
        const std::span<const double> alpha = h.coefficients().first(basis_size(n));
        SweepRow row;
        row.experiment = cfg.experiment;
        row.n = n;
        row.m = rule.size();
        row.repetition = g.repetition;
        row.seed = seed;
        row.eta = report.eta;
        row.rank_deficient = report.rank_deficient;
        row.l2_error = split_l2_error(alpha, *projection.at(n));
        double norm2 = 0.0;
        for (const double a : alpha) norm2 += a * a;
        row.hyper_norm = std::sqrt(norm2);
        row.weight_sum = rule.weight_sum();
        row.wall_time = shared + std::chrono::duration<double>(Clock::now() - t0).count();
        group_rows[static_cast<std::size_t>(gi)].push_back(row);
      }
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(gi)] = e.what();
    }
  }
  for (const auto& msg : failures) {
    if (!msg.empty()) throw Error("sweep cell failed: " + msg);
  }

  for (auto& rows : group_rows) {
    for (auto& r : rows) result.rows.push_back(std::move(r));
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.n, a.m, a.repetition) < std::tie(b.n, b.m, b.repetition);
  });

  for (std::size_t i = 0; i < result.rows.size();) {
    std::size_t j = i;
    SweepAggregate agg;
    agg.n = result.rows[i].n;
    agg.m = result.rows[i].m;
    agg.min = result.rows[i].l2_error;
    agg.max = result.rows[i].l2_error;
    double sum = 0.0;
    while (j < result.rows.size() && result.rows[j].n == agg.n && result.rows[j].m == agg.m) {
      sum += result.rows[j].l2_error;
      agg.min = std::min(agg.min, result.rows[j].l2_error);
      agg.max = std::max(agg.max, result.rows[j].l2_error);
      ++j;
    }
    agg.mean = sum / static_cast<double>(j - i);
    result.aggregates.push_back(agg);
    i = j;
  }

  for (const auto& row : result.rows) {
    if (row.rank_deficient) {
      result.warnings.push_back("rank-deficient Gram matrix at n=" + std::to_string(row.n) +
                                ", m=" + std::to_string(row.m) + " (repetition " + std::to_string(row.repetition) + ")");
    } else if (row.eta < 1.0 && row.hyper_norm > stability_bound(row, result.sup_norm) * (1.0 + 1e-6)) {
      result.warnings.push_back("stability bound violated at n=" + std::to_string(row.n) +
                                ", m=" + std::to_string(row.m));
    }
  }
  return result;
}

void write_rows_csv(std::ostream& out, const SweepResult& result) {
  out << "experiment,n,m,seed,eta,l2_error\n";
  for (const auto& r : result.rows) {
    out << r.experiment << ',' << r.n << ',' << r.m << ',' << r.seed << ',' << g17(r.eta) << ',' << g17(r.l2_error)
        << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const SweepResult& result) {
  out << "experiment,n,m,mean,min,max\n";
  for (const auto& a : result.aggregates) {
    out << result.config.experiment << ',' << a.n << ',' << a.m << ',' << g17(a.mean) << ',' << g17(a.min) << ','
        << g17(a.max) << '\n';
  }
}

void write_timing_csv(std::ostream& out, const SweepResult& result) {
  out << "experiment,n,m,seed,wall_time\n";
  for (const auto& r : result.rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", r.wall_time);
    out << r.experiment << ',' << r.n << ',' << r.m << ',' << r.seed << ',' << buf << '\n';
  }
}

std::vector<std::filesystem::path> write_outputs(const SweepResult& result, const std::filesystem::path& output) {
  auto sibling = [&](const char* suffix) {
    std::filesystem::path p = output;
    p.replace_extension();
    p += suffix;
    return p;
  };
  const std::vector<std::filesystem::path> paths{output, sibling(".agg.csv"), sibling(".timing.csv")};
  if (output.has_parent_path()) std::filesystem::create_directories(output.parent_path());
  const std::array<void (*)(std::ostream&, const SweepResult&), 3> writers{write_rows_csv, write_aggregate_csv,
                                                                           write_timing_csv};
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::ofstream out(paths[i], std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + paths[i].string());
    writers[i](out, result);
  }
  return paths;
}

void print_summary(std::ostream& out, const SweepResult& result) {
  char buf[160];
  std::map<int, std::vector<RateSample>> by_n;
  std::map<std::size_t, std::vector<const SweepAggregate*>> by_m;
  for (const auto& a : result.aggregates) {
    by_n[a.n].push_back({static_cast<double>(a.m), a.mean});
    by_m[a.m].push_back(&a);
  }
  for (const auto& [n, samples] : by_n) {
    if (samples.size() < 2) continue;
    try {
      const RateFit fit = fit_rate(samples);
      std::snprintf(buf, sizeof buf, "rate vs m   n=%-3d slope=%+.4f r2=%.4f points=%zu\n", n, fit.slope,
                    fit.r_squared, fit.n_points);
      out << buf;
    } catch (const InvalidArgument&) {
    }
  }
  if (result.config.schedule != Schedule::fixed_list && by_n.size() >= 2) {
    std::vector<RateSample> samples;
    for (const auto& a : result.aggregates) samples.push_back({static_cast<double>(a.n), a.mean});
    if (std::all_of(samples.begin(), samples.end(), [](const RateSample& s) { return s.size > 0; })) {
      const RateFit fit = fit_rate(samples);
      std::snprintf(buf, sizeof buf, "rate vs n   slope=%+.4f r2=%.4f points=%zu\n", fit.slope, fit.r_squared,
                    fit.n_points);
      out << buf;
    }
  }
  for (const auto& [m, aggs] : by_m) {
    if (aggs.size() < 2) continue;
    const auto best = *std::min_element(aggs.begin(), aggs.end(),
                                        [](const SweepAggregate* a, const SweepAggregate* b) { return a->mean < b->mean; });
    std::snprintf(buf, sizeof buf, "advisory    m=%-8zu best n=%d (mean L2 error %.3e)\n", m, best->n, best->mean);
    out << buf;
  }
}

}  // namespace sphinterp::app
