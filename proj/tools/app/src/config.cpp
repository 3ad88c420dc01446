#include "sphinterp_app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>

#include "sphinterp/errors.hpp"
#include "sphinterp/testfuncs.hpp"

namespace sphinterp::app {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t') out.push_back(c);
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw InvalidArgument("invalid " + std::string(what) + ": '" + t + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw InvalidArgument("invalid boolean: '" + t + "'");
}

}  // namespace

Schedule parse_schedule(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s == "fixed-list") return Schedule::fixed_list;
  if (s == "(n+1)^2") return Schedule::dimension;
  if (s == "ceil((n+1)^2*n^(2/(sigma+3/2)))") return Schedule::qmc_lower;
  if (s == "beta*ceil((n+1)^2*n^(2+2/(sigma+3/2)))") return Schedule::qmc_multiple;
  throw InvalidArgument("unknown schedule '" + std::string(text) +
                        "'; registered: fixed-list, (n+1)^2, ceil((n+1)^2 * n^(2/(sigma+3/2))), "
                        "beta * ceil((n+1)^2 * n^(2 + 2/(sigma+3/2)))");
}

std::string_view schedule_formula(Schedule s) noexcept {
  switch (s) {
    case Schedule::fixed_list: return "fixed-list";
    case Schedule::dimension: return "(n+1)^2";
    case Schedule::qmc_lower: return "ceil((n+1)^2 * n^(2/(sigma+3/2)))";
    case Schedule::qmc_multiple: return "beta * ceil((n+1)^2 * n^(2 + 2/(sigma+3/2)))";
  }
  return "?";
}

std::size_t schedule_size(Schedule s, int n, int sigma, int beta) {
  if (n < 0) throw InvalidArgument("schedule: degree must be >= 0");
  const double dim = static_cast<double>(n + 1) * static_cast<double>(n + 1);
  const double smoothness = sigma + 1.5;
  switch (s) {
    case Schedule::fixed_list: throw InvalidArgument("schedule fixed-list has no formula");
    case Schedule::dimension: return static_cast<std::size_t>(dim);
    case Schedule::qmc_lower: return static_cast<std::size_t>(std::ceil(dim * std::pow(n, 2.0 / smoothness)));
    case Schedule::qmc_multiple:
      return static_cast<std::size_t>(beta) *
             static_cast<std::size_t>(std::ceil(dim * std::pow(n, 2.0 + 2.0 / smoothness)));
  }
  return 0;
}

PointSource PointSource::parse(std::string_view text) {
  const std::string t = trim(text);
  PointSource p;
  if (t == "random") {
    p.kind = PointKind::random;
  } else if (t == "equal-area") {
    p.kind = PointKind::equal_area;
  } else if (t.rfind("file:", 0) == 0 && t.size() > 5) {
    p.kind = PointKind::file;
    p.path = t.substr(5);
  } else {
    throw InvalidArgument("unknown point source '" + t + "' (expected random, equal-area or file:<path>)");
  }
  return p;
}

std::string PointSource::describe() const {
  switch (kind) {
    case PointKind::random: return "random";
    case PointKind::equal_area: return "equal-area";
    case PointKind::file: return "file:" + path.string();
  }
  return "?";
}

std::vector<int> parse_degree_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots != std::string::npos) {
      const int lo = parse_number<int>(part.substr(0, dots), "degree");
      const int hi = parse_number<int>(part.substr(dots + 2), "degree");
      if (hi < lo) throw InvalidArgument("empty degree range '" + part + "'");
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    } else {
      out.push_back(parse_number<int>(part, "degree"));
    }
  }
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  const std::string t = strip_spaces(text);
  if (t.rfind("logspace(", 0) == 0) {
    if (t.back() != ')') throw InvalidArgument("malformed logspace: '" + t + "'");
    const auto args = split(std::string_view(t).substr(9, t.size() - 10), ',');
    if (args.size() != 3) throw InvalidArgument("logspace takes (a, b, count)");
    const double a = parse_number<double>(args[0], "logspace start");
    const double b = parse_number<double>(args[1], "logspace end");
    const int count = parse_number<int>(args[2], "logspace count");
    if (count < 1) throw InvalidArgument("logspace count must be >= 1");
    std::vector<std::size_t> out;
    for (int i = 0; i < count; ++i) {
      const double e = count == 1 ? a : a + (b - a) * i / (count - 1);
      out.push_back(static_cast<std::size_t>(std::llround(std::pow(10.0, e))));
    }
    return out;
  }
  std::vector<std::size_t> out;
  for (const auto& part : split(t, ',')) {
    // Accept 1e4 style as well as plain integers.
    const double v = parse_number<double>(part, "size");
    if (!(v >= 1.0) || v != std::floor(v)) throw InvalidArgument("size must be a positive integer: '" + part + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

int ExperimentConfig::effective_repetitions() const noexcept {
  if (repetitions > 0) return repetitions;
  return points.kind == PointKind::random ? 10 : 1;
}

std::vector<std::pair<int, std::size_t>> ExperimentConfig::grid() const {
  std::vector<std::pair<int, std::size_t>> cells;
  for (const int n : degrees) {
    if (schedule == Schedule::fixed_list) {
      for (const std::size_t m : sizes) cells.emplace_back(n, m);
    } else {
      cells.emplace_back(n, schedule_size(schedule, n, sigma, beta));
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

void ExperimentConfig::validate() const {
  if (experiment.empty() || experiment.find_first_of(",\n\"") != std::string::npos) {
    throw InvalidArgument("experiment id must be nonempty and free of commas and quotes");
  }
  (void)TestFunction::parse(function, sigma);
  if (degrees.empty()) throw InvalidArgument("degrees must not be empty");
  for (const int n : degrees) {
    if (n < 0) throw InvalidArgument("degrees must be >= 0");
  }
  if (schedule == Schedule::fixed_list && sizes.empty() && points.kind != PointKind::file) {
    throw InvalidArgument("schedule fixed-list needs a nonempty sizes list");
  }
  if (schedule != Schedule::fixed_list && !sizes.empty()) {
    throw InvalidArgument("sizes are only used with schedule fixed-list");
  }
  if (schedule != Schedule::fixed_list && points.kind == PointKind::file) {
    throw InvalidArgument("a point file fixes m; use schedule fixed-list");
  }
  if (beta < 1) throw InvalidArgument("beta must be >= 1");
  if (repetitions < 0) throw InvalidArgument("repetitions must be >= 1");
  if (reference_order < 0) throw InvalidArgument("reference_order must be >= 1");
  if (sigma < 0 || sigma > 4) throw InvalidArgument("sigma must be in 0..4");
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected 'key = value'");
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(source, line_no, "duplicate key '" + key + "'");
    try {
      if (key == "experiment") {
        cfg.experiment = value;
      } else if (key == "function") {
        cfg.function = value;
      } else if (key == "sigma") {
        cfg.sigma = parse_number<int>(value, "sigma");
      } else if (key == "points") {
        cfg.points = PointSource::parse(value);
      } else if (key == "degrees") {
        cfg.degrees = parse_degree_list(value);
      } else if (key == "sizes") {
        cfg.sizes = parse_size_list(value);
      } else if (key == "schedule") {
        cfg.schedule = parse_schedule(value);
      } else if (key == "beta") {
        cfg.beta = parse_number<int>(value, "beta");
      } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(value, "seed");
      } else if (key == "repetitions") {
        cfg.repetitions = parse_number<int>(value, "repetitions");
        if (cfg.repetitions < 1) throw InvalidArgument("repetitions must be >= 1");
      } else if (key == "output") {
        cfg.output = value;
      } else if (key == "force") {
        cfg.force = parse_bool(value);
      } else if (key == "reference_order") {
        cfg.reference_order = parse_number<int>(value, "reference_order");
      } else {
        throw InvalidArgument("unknown key '" + key + "'");
      }
    } catch (const InvalidArgument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  // A relative point-file path is taken relative to the config file.
  if (cfg.points.kind == PointKind::file && cfg.points.path.is_relative() && source.find('/') != std::string::npos) {
    const auto candidate = std::filesystem::path(source).parent_path() / cfg.points.path;
    if (std::filesystem::exists(candidate)) cfg.points.path = candidate;
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

}  // namespace sphinterp::app
