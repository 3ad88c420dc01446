#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sphinterp::app {

enum class Schedule {
  fixed_list,     // sizes given explicitly
  dimension,      // (n+1)^2
  qmc_lower,      // ceil((n+1)^2 * n^(2/(sigma+3/2)))
  qmc_multiple,   // beta * ceil((n+1)^2 * n^(2 + 2/(sigma+3/2)))
};

Schedule parse_schedule(std::string_view text);
std::string_view schedule_formula(Schedule s) noexcept;

std::size_t schedule_size(Schedule s, int n, int sigma, int beta);

enum class PointKind { random, equal_area, file };

struct PointSource {
  PointKind kind = PointKind::random;
  std::filesystem::path path;  // PointKind::file only

  static PointSource parse(std::string_view text);
  std::string describe() const;
};

struct ExperimentConfig {
  std::string experiment = "sweep";
  std::string function = "f1";
  int sigma = 2;
  PointSource points;
  std::vector<int> degrees;
  std::vector<std::size_t> sizes;
  Schedule schedule = Schedule::fixed_list;
  int beta = 1;
  std::uint64_t seed = 1;
  int repetitions = 0;  // 0: 10 for random points, 1 otherwise
  std::filesystem::path output;
  bool force = false;
  int reference_order = 0;  // 0: chosen from the degree grid

  int effective_repetitions() const noexcept;

  /// (n, m) grid after applying the schedule.
  std::vector<std::pair<int, std::size_t>> grid() const;

  /// Throws InvalidArgument when the grids or parameters are inconsistent.
  void validate() const;
};

/// `key = value` lines, '#' comments. Unknown keys and malformed values are
/// ParseErrors naming the line.
ExperimentConfig parse_config(std::istream& in, const std::string& source);
ExperimentConfig load_config(const std::filesystem::path& path);

std::vector<int> parse_degree_list(std::string_view text);
std::vector<std::size_t> parse_size_list(std::string_view text);

}  // namespace sphinterp::app
