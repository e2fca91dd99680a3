#pragma once

#include <array>
#include <span>

#include "wenomap/stencil_tables.hpp"

namespace wenomap {

/// Nonlinear (or linear) weights of one reconstruction; only the first r
/// entries are meaningful.
struct NonlinearWeights {
  int r = 0;
  std::array<double, kMaxOrder> omega{};

  double sum() const {
    double s = 0.0;
    for (int k = 0; k < r; ++k) s += omega[k];
    return s;
  }
};

using StencilValues = std::array<double, kMaxOrder>;

/// Candidate values q_k on a (2r-1)-point window f_{j-r+1} .. f_{j+r-1}.
StencilValues candidates(std::span<const double> window, const StencilTables& t);

/// Jiang-Shu smoothness indicators on the same window.
StencilValues smoothness_indicators(std::span<const double> window, const StencilTables& t);

/// alpha_k = d_k / (eps + IS_k)^2, normalized.
NonlinearWeights js_weights(std::span<const double> is, std::span<const double> d, double eps);

/// sum_k omega_k q_k.
double reconstruct(std::span<const double> window, const NonlinearWeights& w, const StencilTables& t);

/// Linear weights as a NonlinearWeights value.
NonlinearWeights linear_weights(const StencilTables& t);

namespace detail {

// Window-pointer kernels shared by the solver paths. `f` points to the first
// window entry; the compiler unrolls these for a fixed R.
template <int R>
inline void candidates_r(const double* f, const StencilTables& t, double* q) {
  for (int k = 0; k < R; ++k) {
    double s = 0.0;
    for (int l = 0; l < R; ++l) s += t.a[k][l] * f[k + l];
    q[k] = s;
  }
}

template <int R>
inline void indicators_r(const double* f, const StencilTables& t, double* is) {
  for (int k = 0; k < R; ++k) {
    double s = 0.0;
    for (int m = 0; m < R - 1; ++m) {
      double inner = 0.0;
      for (int l = 0; l < R; ++l) inner += t.b[k][m][l] * f[k + l];
      const double sq = inner * inner;
      s += t.c[m] * sq;
    }
    is[k] = s;
  }
}

template <int R>
inline void normalize_r(double* alpha) {
  double sum = 0.0;
  for (int k = 0; k < R; ++k) sum += alpha[k];
  const double inv = 1.0 / sum;
  for (int k = 0; k < R; ++k) alpha[k] *= inv;
}

template <int R>
inline void js_alpha_r(const double* is, const StencilTables& t, double eps, double* alpha) {
  for (int k = 0; k < R; ++k) {
    const double den = eps + is[k];
    alpha[k] = t.d[k] / (den * den);
  }
}

}  // namespace detail

}  // namespace wenomap
