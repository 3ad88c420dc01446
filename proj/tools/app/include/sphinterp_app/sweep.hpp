#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sphinterp_app/config.hpp"

namespace sphinterp::app {

struct SweepRow {
  std::string experiment;
  int n = 0;
  std::size_t m = 0;
  int repetition = 0;
  std::uint64_t seed = 0;  // 0 for deterministic point sets
  double eta = 0.0;
  bool rank_deficient = false;
  double l2_error = 0.0;
  double hyper_norm = 0.0;   // ||U_n f||_{L2}
  double weight_sum = 0.0;
  double wall_time = 0.0;    // seconds, includes the shared assembly of its (m, repetition) group
};

struct SweepAggregate {
  int n = 0;
  std::size_t m = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<SweepRow> rows;             // sorted by (n, m, repetition)
  std::vector<SweepAggregate> aggregates; // sorted by (n, m)
  double sup_norm = 0.0;                  // refined-grid estimate of ||f||_inf
  int reference_order = 0;
  double reference_change = 0.0;          // max relative tail change on doubling the reference
  std::vector<std::string> warnings;
};

/// Seed of cell (m, repetition); shared by all degrees so that every n sees
/// the same points.
std::uint64_t cell_seed(std::uint64_t base, std::size_t m, int repetition);

/// Throws InvalidArgument when a cell has (n+1)^2 > m and force is off.
SweepResult run_sweep(const ExperimentConfig& config);

void write_rows_csv(std::ostream& out, const SweepResult& result);
void write_aggregate_csv(std::ostream& out, const SweepResult& result);
void write_timing_csv(std::ostream& out, const SweepResult& result);

/// Writes <output>, <stem>.agg.csv and <stem>.timing.csv; returns the paths.
std::vector<std::filesystem::path> write_outputs(const SweepResult& result, const std::filesystem::path& output);

/// Human-readable summary: rate fits per n (and against n for schedules) and
/// the best-n advisory for each m.
void print_summary(std::ostream& out, const SweepResult& result);

/// Stability bound sqrt(1 + eta) * sqrt(sum w) * ||f||_inf for a row.
double stability_bound(const SweepRow& row, double sup_norm);

}  // namespace sphinterp::app
