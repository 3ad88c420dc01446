#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sphinterp::app {

struct CheckResult {
  std::string check;   // registered check name
  std::string label;   // case within the check
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  std::vector<std::string> filter;  // empty: every check
  std::filesystem::path corpus;     // directory of bundled point files
};

const std::vector<std::string>& check_names();

/// Runs the selected checks in registration order. Unknown names in the
/// filter are an InvalidArgument.
std::vector<CheckResult> run_checks(const CheckOptions& options);

std::filesystem::path default_corpus_dir();

}  // namespace sphinterp::app
