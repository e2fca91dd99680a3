#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wenomap/boundary.hpp"
#include "wenomap/euler.hpp"
#include "wenomap/timeint.hpp"

namespace wenomap {

enum class ProblemId { SWA1, SWA2, Combo, StrongShock, Blast, ShuOsher, TitarevToro };

std::string problem_name(ProblemId id);
ProblemId problem_from_name(const std::string& name);  // throws ConfigError

struct ProblemSpec {
  ProblemId id = ProblemId::SWA1;
  double a = 1.0;     // SWA-I / SWA-II shape parameter
  double pr = 1e6;    // strong shock pressure ratio
  double x_lo = -1.0, x_hi = 1.0;
  double t_final = 2.0;
  std::size_t default_n = 40;
  BoundaryRule bc = BoundaryRule::Periodic;

  bool euler() const;
  int components() const { return euler() ? 3 : 1; }
  /// Default reference resolution for fine-grid references (0 = analytic).
  std::size_t default_reference_n() const;
};

/// Problem with its standard parameters.
ProblemSpec make_problem(ProblemId id);
/// Throws ConfigError on invalid parameters.
void validate(const ProblemSpec& p);

/// Uniform grid. Periodic problems use nodes x_i = x_lo + i dx with
/// dx = L/N; all others use cell centres x_i = x_lo + (i + 1/2) dx.
struct Grid {
  double x_lo = 0.0;
  double dx = 1.0;
  std::size_t n = 0;
  bool centred = false;

  double x(std::size_t i) const { return x_lo + (static_cast<double>(i) + (centred ? 0.5 : 0.0)) * dx; }
};

Grid make_grid(const ProblemSpec& p, std::size_t n);

struct SimState {
  ProblemSpec problem;
  Grid grid;
  int components = 1;
  State u;  // component-major
  double t = 0.0;
};

double initial_scalar(const ProblemSpec& p, double x);
PrimitiveState initial_primitive(const ProblemSpec& p, double x);

SimState initialize(const ProblemSpec& p, std::size_t n, const GasModel& gas = {});

/// Component-major copy of the state with g ghost cells on each side.
std::vector<double> apply_bc(const SimState& s, int g);

struct ReferenceSolution {
  enum class Kind { AnalyticShift, FineGrid } kind = Kind::AnalyticShift;
  Grid grid;
  int components = 1;
  State u;
  std::string scheme;
  bool from_cache = false;
};

struct ReferenceOptions {
  std::size_t n = 0;          // 0: problem default
  double cfl = 0.5;
  GasModel gas{};
  double eps_sw_rel = 1e-6;
  std::string cache_dir;      // empty: $WENOMAP_REFERENCE_CACHE or ./reference_cache
  bool use_cache = true;
};

/// Analytic shift for scalar problems; fine-grid WENO5-JS solution for Euler
/// problems, cached on disk keyed by a content hash.
ReferenceSolution reference(const ProblemSpec& p, std::size_t coarse_n, const ReferenceOptions& opt = {});

/// Reference values of one component at the coarse grid points: exact index
/// alignment when the grids nest, linear interpolation otherwise.
std::vector<double> sample_reference(const ReferenceSolution& ref, const Grid& coarse, int component);

/// Cache key of a fine-grid reference.
std::string reference_key(const ProblemSpec& p, const ReferenceOptions& opt, std::size_t n_ref);
std::string reference_cache_dir(const ReferenceOptions& opt);

}  // namespace wenomap
