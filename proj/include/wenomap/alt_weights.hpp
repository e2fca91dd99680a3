#pragma once

#include <array>
#include <cmath>
#include <span>

#include "wenomap/weno_core.hpp"

namespace wenomap {

enum class ZVariant { Z5, P3, F3, NIS5 };

struct ZConfig {
  ZVariant variant = ZVariant::Z5;
  int q = 1;           // Z5 only
  double eps = 1e-40;
  double dx = 0.0;     // P3 only, lambda = dx^(1/6)
};

/// Throws ConfigError if q is not 1 or 2 (Z5) or eps <= 0.
void validate(const ZConfig& cfg);

/// WENO5-Z: alpha_k = d_k [1 + (tau_z / (IS_k + eps))^q], tau_z = |IS_0 - IS_2|.
NonlinearWeights z5_weights(std::span<const double> is, std::span<const double> d, int q, double eps);

/// WENO3-P+3 on the triplet f = (f_{i-1}, f_i, f_{i+1}).
NonlinearWeights p3_weights(std::span<const double> is, const std::array<double, 3>& f, std::span<const double> d,
                            double dx, double eps);

/// WENO3-F3 on the triplet f = (f_{i-1}, f_i, f_{i+1}).
NonlinearWeights f3_weights(std::span<const double> is, const std::array<double, 3>& f, std::span<const double> d,
                            double eps);

/// NIS_k for a 5-point window f_{j-2} .. f_{j+2}. Values may be negative.
std::array<double, 3> nis_indicators(std::span<const double> window);

namespace detail {

inline void z5_alpha(const double* is, const double* d, int q, double eps, double* alpha) {
  const double tau = std::abs(is[0] - is[2]);
  for (int k = 0; k < 3; ++k) {
    const double ratio = tau / (is[k] + eps);
    alpha[k] = d[k] * (1.0 + (q == 1 ? ratio : ratio * ratio));
  }
}

inline void p3_alpha(const double* is, const double* f, const double* d, double lambda, double eps, double* alpha) {
  const double diff = f[0] - f[2];
  const double tau = std::abs(0.5 * (is[0] + is[1]) - 0.25 * diff * diff);
  for (int k = 0; k < 2; ++k) {
    const double ise = is[k] + eps;
    alpha[k] = d[k] * (1.0 + tau / ise + lambda * ise / (tau + eps));
  }
}

inline void f3_alpha(const double* is, const double* f, const double* d, double eps, double* alpha) {
  const double second = f[0] - 2.0 * f[1] + f[2];
  const double first = f[0] - f[2];
  const double is3 = second * second / 12.0 + 0.25 * first * first;
  const double gap = std::abs(0.5 * (is[0] + is[1]) - is3);
  const double tau = gap * std::sqrt(gap);
  for (int k = 0; k < 2; ++k) alpha[k] = d[k] * (1.0 + tau / (is[k] + eps));
}

// Correction terms are attached to the sub-stencil whose data they use.
inline void nis_correct(const double* f, double* is) {
  is[0] -= std::abs((f[0] - 2.0 * f[1] + f[2]) * (f[0] - 4.0 * f[1] + 3.0 * f[2]));
  is[1] -= std::abs((f[1] - 2.0 * f[2] + f[3]) * (f[1] - f[3]));
  is[2] -= std::abs((f[2] - 2.0 * f[3] + f[4]) * (3.0 * f[2] - 4.0 * f[3] + f[4]));
}

}  // namespace detail

}  // namespace wenomap
