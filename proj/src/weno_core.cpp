#include "wenomap/weno_core.hpp"

#include <stdexcept>
#include <string>

namespace wenomap {
namespace {

void check_window(std::span<const double> window, const StencilTables& t) {
  if (static_cast<int>(window.size()) != t.window_size()) {
    throw std::invalid_argument("window length " + std::to_string(window.size()) + " does not match r=" +
                                std::to_string(t.r));
  }
}

}  // namespace

StencilValues candidates(std::span<const double> window, const StencilTables& t) {
  check_window(window, t);
  StencilValues q{};
  for (int k = 0; k < t.r; ++k) {
    double s = 0.0;
    for (int l = 0; l < t.r; ++l) s += t.a[k][l] * window[k + l];
    q[k] = s;
  }
  return q;
}

StencilValues smoothness_indicators(std::span<const double> window, const StencilTables& t) {
  check_window(window, t);
  StencilValues is{};
  for (int k = 0; k < t.r; ++k) {
    double s = 0.0;
    for (int m = 0; m < t.r - 1; ++m) {
      double inner = 0.0;
      for (int l = 0; l < t.r; ++l) inner += t.b[k][m][l] * window[k + l];
      const double sq = inner * inner;
      s += t.c[m] * sq;
    }
    is[k] = s;
  }
  return is;
}

NonlinearWeights js_weights(std::span<const double> is, std::span<const double> d, double eps) {
  if (is.size() != d.size() || is.empty() || is.size() > static_cast<std::size_t>(kMaxOrder)) {
    throw std::invalid_argument("js_weights: IS and d must have equal length 1..5");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("js_weights: eps must be positive");
  NonlinearWeights w;
  w.r = static_cast<int>(is.size());
  double sum = 0.0;
  for (int k = 0; k < w.r; ++k) {
    const double den = eps + is[k];
    w.omega[k] = d[k] / (den * den);
    sum += w.omega[k];
  }
  for (int k = 0; k < w.r; ++k) w.omega[k] /= sum;
  return w;
}

double reconstruct(std::span<const double> window, const NonlinearWeights& w, const StencilTables& t) {
  if (w.r != t.r) throw std::invalid_argument("reconstruct: weight count does not match r");
  const StencilValues q = candidates(window, t);
  double s = 0.0;
  for (int k = 0; k < t.r; ++k) s += w.omega[k] * q[k];
  return s;
}

NonlinearWeights linear_weights(const StencilTables& t) {
  NonlinearWeights w;
  w.r = t.r;
  for (int k = 0; k < t.r; ++k) w.omega[k] = t.d[k];
  return w;
}

}  // namespace wenomap
