#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wenomap/mappings.hpp"
#include "wenomap/weno_core.hpp"

namespace wenomap {

enum class BaseScheme { JS, Linear, Z5, P3, F3, NIS5 };

std::string base_name(BaseScheme b);
BaseScheme base_from_name(const std::string& name);  // throws ConfigError

inline constexpr double kEpsUnmapped = 1e-6;
inline constexpr double kEpsMapped = 1e-40;

/// How nonlinear weights are formed for one reconstruction.
struct WeightingStrategy {
  int r = 3;
  BaseScheme base = BaseScheme::JS;
  int q = 1;                         // Z5 exponent
  std::vector<MappingSpec> mapping;  // one spec per k; empty = unmapped
  std::optional<double> eps;
  bool is_upgrade3 = false;          // WENO3 with WENO5 indicators
  bool nis_clamp = true;
  bool aim_grouped = false;          // AIM-M: lambda = min over both flux directions

  bool mapped() const { return !mapping.empty(); }
  double resolved_eps() const;
  /// Points per reconstruction window (2r-1, or 5 with the WENO3 upgrade).
  int window_size() const;
  int ghost_cells() const { return (window_size() + 1) / 2; }
};

/// Throws ConfigError naming the violated invariant.
void validate(const WeightingStrategy& s);

/// Short human-readable scheme label such as "WENO5-PRM" or "WENO3-JS+IS3".
std::string scheme_label(const WeightingStrategy& s, const std::string& mapping_name = "");

/// Interface reconstruction engine for a fixed strategy and grid spacing.
class Reconstructor {
 public:
  Reconstructor(WeightingStrategy s, double dx);

  const WeightingStrategy& strategy() const { return s_; }
  int ghost() const { return ghost_; }
  int window() const { return window_; }

  /// Interface values for n cells stored with ghost() padding on both sides
  /// (cell i at index i + ghost()). out[i] is the value at x_{i-1/2} for
  /// i = 0..n: the left-biased reconstruction of `plus` plus the mirrored
  /// reconstruction of `minus`. Either input may be null.
  void interfaces(const double* plus, const double* minus, std::size_t n, double* out) const;

  /// Nonlinear weights (after mapping) for one left-biased window.
  NonlinearWeights weights(std::span<const double> window) const;
  /// Reconstructed left-biased value for one window.
  double reconstruct(std::span<const double> window) const;

 private:
  WeightingStrategy s_;
  const StencilTables* t_;
  double dx_;
  double eps_;
  double lambda_p3_;
  double eps_aim_;
  int ghost_;
  int window_;
  std::array<MappingSpec, kMaxOrder> specs_{};
  bool adaptive_ = false;

  // PRM coefficients with the left-branch signs folded in:
  // den = u^n + c1 z^(m+1) + c2 u^n1 z^m1, z = 1-w (right) or w (left).
  struct PrmFast {
    double dk = 0.5;
    int n = 1, mp1 = 1, n1 = 1;
    double c1[2]{}, c2[2]{};
    int m1[2]{};
  };
  std::array<PrmFast, kMaxOrder> prm_{};
  bool all_prm_ = false;

  template <int R, int W, BaseScheme B>
  friend struct KernelAccess;
};

}  // namespace wenomap
