#pragma once

#include <string>
#include <vector>

#include "wenomap/harness.hpp"

namespace wenomap {

/// One verdict line of a suite summary. Gated checks decide the exit code;
/// the others record an observation next to the expected outcome.
struct SuiteCheck {
  std::string name;
  std::string expected;
  std::string observed;
  bool gated = false;
  bool pass = false;
};

struct SuiteReport {
  std::string name;
  std::vector<ErrorReport> reports;
  std::vector<SuiteCheck> checks;
  bool ok() const;
};

std::vector<std::string> suite_names();

/// Runs a named bundle: accuracy, stability, robustness or extended.
/// Throws ConfigError for unknown names.
SuiteReport run_suite(const std::string& name, int threads = 1);

/// Writes <dir>/<suite>.csv (or .json) with the harness columns and
/// <dir>/<suite>_summary.csv with one row per check.
void write_suite(const SuiteReport& r, const std::string& dir, OutputFormat format, bool deterministic = false);
std::string format_summary(const SuiteReport& r);

/// Strategy helpers shared by suites and tests.
WeightingStrategy js_strategy(int r);
WeightingStrategy preset_strategy(int r, const std::string& preset);
WeightingStrategy z5_strategy(int q);
WeightingStrategy base_strategy(int r, BaseScheme b);

/// Display name of a preset, e.g. "PRM", "M", "PM61".
std::string preset_label(const std::string& preset);

}  // namespace wenomap
