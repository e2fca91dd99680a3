#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wenomap/weno_core.hpp"

namespace wenomap {

enum class Family { Identity, GM, PM, PPM, IM, RM, AIM, R, PRM };

std::string family_name(Family f);
Family family_from_name(const std::string& name);  // throws ConfigError

enum class Side { Left, Right };

/// Coefficients of one PRM branch. The left branch is stored in the
/// absorbed form, i.e. the denominator reads
///   (w-dk)^n + (-1)^(n1+n) c2 (w-dk)^n1 w^m1 + (-1)^n c1 w^(m+1).
struct PrmBranch {
  double c1 = 1.0;
  double c2 = 0.0;
  int m1 = 1;
};

/// One mapping function instance for a single linear weight dk.
///
/// Only the fields belonging to `family` are read. Build specs with the
/// make_* factories, which validate parameters; eval never throws.
struct MappingSpec {
  Family family = Family::Identity;
  double dk = 0.5;
  int n = 1;
  int m = 0;
  int n1 = 1;

  double A = 1.0;  // IM

  double s = 0.0;         // AIM scale when not adaptive
  bool adaptive = false;  // AIM: s = c/dk * lambda computed by the solver
  double aim_c = 1.0e4;

  PrmBranch left{}, right{};  // PRM

  double b = 0.0;         // R: free parameter when built from b
  bool from_b = false;
  double c2_right = 0.0;  // R: free coefficient c_{n,m,2} per side
  double c2_left = 0.0;   //    (left side in mirrored-right units)

  std::array<double, 10> rm_a{};  // RM denominator coefficients a_0..a_{m+1}

  bool piecewise() const;
};

// Factories. All throw DomainError on invalid parameters.
MappingSpec make_identity(double dk);
MappingSpec make_gm(double dk);
MappingSpec make_pm(double dk, int n);
MappingSpec make_ppm(double dk, int n, int m);
MappingSpec make_im(double dk, int n, double A);
MappingSpec make_rm(double dk, int n, int m);
MappingSpec make_aim(double dk, int n, int m, double s);
MappingSpec make_aim_adaptive(double dk, int n, int m, double c);
MappingSpec make_r_from_b(double dk, int n, int m, double b);
MappingSpec make_r(double dk, int n, int m, double c2_right, double c2_left);
MappingSpec make_prm(double dk, int n, int m, int n1, const PrmBranch& left, const PrmBranch& right);

/// Converts mirrored-form left coefficients (same c1, c2 as the right
/// branch, no absorbed dk factors) into the absorbed left form.
PrmBranch prm_left_absorbed(double dk, int n, int m, int n1, const PrmBranch& unabsorbed);

/// Free coefficient c_{n,m,2} of the R family for a given b.
double r_c2_from_b(double dk, int n, int m, double b);
/// True iff b lies in the admissible range for R_{n,m}.
bool r_b_admissible(double dk, int n, int m, double b);
/// True iff c_{n,m,2} lies in the admissible range for R_{n,m}.
bool r_c2_admissible(double dk, int n, int m, double c2);
/// Exponent n1 and coefficients c1, c3, c4 of the R_{n,m} denominator.
struct RCoefficients {
  int n1 = 0;
  double c1 = 0.0, c3 = 0.0, c4 = 0.0;
};
RCoefficients r_coefficients(double dk, int n, int m);
/// Closed forms for g^(n+1)(dk) and g^(m+1)(1) of R_{n,m} (right branch).
struct RDerivativeTargets {
  double at_dk = 0.0;
  double at_1 = 0.0;
};
RDerivativeTargets r_derivative_targets(double dk, int n, int m, double c2);

/// g(omega); omega is clamped to [0,1]. Piecewise families use the left
/// branch for omega < dk.
double eval(const MappingSpec& spec, double omega);
/// Evaluates with an explicit AIM scale s (ignored for other families).
double eval_scaled(const MappingSpec& spec, double omega, double s);
/// Evaluates a single branch without clamping or branch selection.
double eval_side(const MappingSpec& spec, Side side, double omega);

/// g^L(w) = dk/(1-dk) [1 - g^R(1 - (1-dk)/dk w)].
std::function<double(double)> left_from_right(std::function<double(double)> g_right, double dk);

/// Adaptive AIM scale s = c/dk * lambda, lambda = min IS / (max IS + dx^7).
/// With `other`, lambda = min(lambda, lambda_other).
double aim_scale(std::span<const double> is, double dk, double c, double dx,
                 std::optional<std::span<const double>> other = std::nullopt);

/// alpha*_k = g_k(omega_k), normalized.
NonlinearWeights map_weights(const NonlinearWeights& omega, std::span<const MappingSpec> specs);

/// Default fixed AIM scale for specs that have adaptive = true and no solver context.
inline constexpr double kAimProfileScale = 1.0e4;

struct DerivativeOrder {
  /// Derivative values g^(1..max_order) at the point, high-precision.
  std::vector<double> derivatives;
  /// Number of leading derivatives (from i = first_checked) that vanish.
  int vanishing = 0;
  bool finite = true;
};

struct CnmReport {
  int n = 0, m = 0, k = 0;
  double err_at_dk = 0.0, err_at_0 = 0.0, err_at_1 = 0.0;
  DerivativeOrder left_at_dk, right_at_dk, at_0, at_1;
  bool monotone = true;
  double endpoint_slope_0 = 0.0, endpoint_slope_1 = 0.0;
  bool differentiation_ok = true;
  bool fixed_points_ok = false;
  bool dk_ok = false, zero_ok = false, one_ok = false;
  bool satisfied = false;
  std::string message;
};

/// Verifies C_{n,m,k} (k defaults to m): fixed points, vanishing derivative
/// orders at dk from both sides and at the endpoints, and monotonicity.
CnmReport check_cnm(const MappingSpec& spec, int n, int m, std::optional<int> k = std::nullopt);

/// Rational families: denominators bounded away from zero on each branch.
bool check_singularity_free(const MappingSpec& spec);

/// Monotone nondecreasing on a uniform grid of `samples` points.
bool check_monotone(const MappingSpec& spec, int samples = 10001);

/// Max of |g(0)|, |g(dk)-dk|, |g(1)-1|.
double fixed_point_error(const MappingSpec& spec);

/// One row of the order-requirement table. Negative entries mean "not
/// applicable / not printed".
struct OrderRequirement {
  int r = 0;
  int ncp = 0;
  int rc_js = -1;
  int rc_mapped = -1;  // -1: "-", -2: "N/A"
  int rcg_min = -1;    // lower bound on n; -1: "-", -2: "N/A"
};
std::span<const OrderRequirement> order_requirements();

/// Per-k PRM specs for r in {2,3,4}; throws ConfigError for r = 5.
std::vector<MappingSpec> table6_specs(int r);

enum class Table7Variant { R322, MimicPM, MimicRM };
std::vector<MappingSpec> table7_specs(Table7Variant v);

/// Per-k specs for a named preset ("prm", "gm", "pm61", "rm260", ...).
std::vector<MappingSpec> preset_specs(const std::string& name, int r);
std::vector<std::string> preset_names();

}  // namespace wenomap
