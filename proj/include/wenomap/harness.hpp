#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wenomap/problems.hpp"
#include "wenomap/strategy.hpp"
#include "wenomap/timeint.hpp"

namespace wenomap {

/// Everything needed to run one (problem, scheme, grid) combination.
struct CaseSpec {
  ProblemSpec problem;
  WeightingStrategy strategy;
  std::string scheme;  // label used in result tables
  std::size_t n = 0;   // 0: problem default
  Integrator integrator = Integrator::TvdRk3;
  StepPolicy policy{};
  GasModel gas{};
  double eps_sw_rel = 1e-6;
  ReferenceOptions reference{};
};

/// Standard integrator and step policy for a problem: RK4 with the
/// accuracy-mode bound for SWA-I/II, TVD-RK3 with CFL 0.1 for
/// combination-waves and CFL 0.5 for Euler problems.
CaseSpec default_case(const ProblemSpec& p, const WeightingStrategy& s, const std::string& scheme);

struct BlowUpInfo {
  std::size_t step = 0;
  std::size_t cell = 0;
  double time = 0.0;
  std::string what;
};

struct Diagnostics {
  bool completed = false;
  std::optional<BlowUpInfo> blow_up;
  std::size_t steps = 0;
  double wall_ms = 0.0;
  double min_value = 0.0, max_value = 0.0;  // scalar: field extrema over all steps
  double min_density = 0.0, min_pressure = 0.0;  // Euler: minima over all steps
  bool boundary_disturbed = false;  // zero-gradient outer cells changed
};

struct CaseResult {
  SimState state;
  Diagnostics diag;
};

/// Integrates to the final time or records a blow-up.
CaseResult run_case(const CaseSpec& c);

/// One result row.
struct GridError {
  std::size_t n = 0;
  double l1 = 0.0, linf = 0.0;
  std::optional<double> order_l1, order_linf;
  double oscillation = 0.0;
  std::optional<std::size_t> blow_up_step;
  double wall_ms = 0.0;
};

struct ErrorReport {
  std::string problem;
  std::string scheme;
  std::vector<GridError> rows;
  bool aborted = false;
};

/// L1 = dx * sum |u - ref|, Linf = max |u - ref| on the compared component
/// (density for Euler problems).
struct Norms {
  double l1 = 0.0, linf = 0.0;
};
Norms error_norms(const std::vector<double>& u, const std::vector<double>& ref, double dx);

/// max(0, max(u) - max(ref), min(ref) - min(u)) plus half the largest total
/// variation excess of u over ref in windows around reference jumps.
double oscillation_metric(const std::vector<double>& u, const std::vector<double>& ref, bool periodic = true);

/// Runs one case and compares it with the problem reference.
ErrorReport evaluate_case(const CaseSpec& c);

/// Runs the case on each grid and fills pairwise orders log2(e_i / e_{i+1}).
/// A blow-up stops the study and marks the report aborted.
ErrorReport convergence_study(const CaseSpec& base, const std::vector<std::size_t>& grids);

/// Fills order columns from consecutive rows.
void fill_orders(ErrorReport& r);

enum class OutputFormat { Csv, Json };

/// Writes the fixed column set. With `deterministic`, wall_ms is left blank.
void emit_results(const std::vector<ErrorReport>& reports, OutputFormat format, const std::string& path,
                  bool deterministic = false);
std::string format_results(const std::vector<ErrorReport>& reports, OutputFormat format, bool deterministic = false);

/// Runs jobs on up to `threads` workers; results keep job order.
std::vector<ErrorReport> run_parallel(const std::vector<std::function<ErrorReport()>>& jobs, int threads);

}  // namespace wenomap
