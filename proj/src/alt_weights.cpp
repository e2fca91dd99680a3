#include "wenomap/alt_weights.hpp"

#include <stdexcept>
#include <string>

#include "wenomap/errors.hpp"

namespace wenomap {
namespace {

void require_size(std::span<const double> s, std::size_t n, const char* what) {
  if (s.size() != n) throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) + " values");
}

NonlinearWeights normalized(const double* alpha, int r) {
  NonlinearWeights w;
  w.r = r;
  double sum = 0.0;
  for (int k = 0; k < r; ++k) sum += alpha[k];
  for (int k = 0; k < r; ++k) w.omega[k] = alpha[k] / sum;
  return w;
}

}  // namespace

void validate(const ZConfig& cfg) {
  if (!(cfg.eps > 0.0)) throw ConfigError("eps must be positive");
  if (cfg.variant == ZVariant::Z5 && cfg.q != 1 && cfg.q != 2) throw ConfigError("Z5 requires q in {1,2}");
  if (cfg.variant == ZVariant::P3 && !(cfg.dx > 0.0)) throw ConfigError("P3 requires dx > 0");
}

NonlinearWeights z5_weights(std::span<const double> is, std::span<const double> d, int q, double eps) {
  require_size(is, 3, "z5_weights IS");
  require_size(d, 3, "z5_weights d");
  if (q != 1 && q != 2) throw ConfigError("Z5 requires q in {1,2}");
  double alpha[3];
  detail::z5_alpha(is.data(), d.data(), q, eps, alpha);
  return normalized(alpha, 3);
}

NonlinearWeights p3_weights(std::span<const double> is, const std::array<double, 3>& f, std::span<const double> d,
                            double dx, double eps) {
  require_size(is, 2, "p3_weights IS");
  require_size(d, 2, "p3_weights d");
  double alpha[2];
  detail::p3_alpha(is.data(), f.data(), d.data(), std::pow(dx, 1.0 / 6.0), eps, alpha);
  return normalized(alpha, 2);
}

NonlinearWeights f3_weights(std::span<const double> is, const std::array<double, 3>& f, std::span<const double> d,
                            double eps) {
  require_size(is, 2, "f3_weights IS");
  require_size(d, 2, "f3_weights d");
  double alpha[2];
  detail::f3_alpha(is.data(), f.data(), d.data(), eps, alpha);
  return normalized(alpha, 2);
}

std::array<double, 3> nis_indicators(std::span<const double> window) {
  require_size(window, 5, "nis_indicators window");
  const StencilTables& t = load_tables(3);
  std::array<double, 3> is{};
  detail::indicators_r<3>(window.data(), t, is.data());
  detail::nis_correct(window.data(), is.data());
  return is;
}

}  // namespace wenomap
