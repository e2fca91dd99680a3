#include "wenomap/advection.hpp"

#include <cmath>
#include <string>

#include "wenomap/errors.hpp"

namespace wenomap {

AdvectionRhs::AdvectionRhs(const WeightingStrategy& strategy, double dx, std::size_t n, double speed, BoundaryRule bc)
    : rc_(strategy, dx), dx_(dx), n_(n), speed_(speed), bc_(bc) {
  if (n < static_cast<std::size_t>(2 * strategy.r + 1)) throw ConfigError("grid too small for the stencil");
  padded_.resize(n + 2 * static_cast<std::size_t>(rc_.ghost()));
  fhat_.resize(n + 1);
}

void AdvectionRhs::operator()(const std::vector<double>& u, std::vector<double>& dudt, double t) {
  const int g = rc_.ghost();
  pad(u.data(), n_, g, bc_, false, padded_.data());
  for (double& v : padded_) v *= speed_;
  if (speed_ >= 0.0) {
    rc_.interfaces(padded_.data(), nullptr, n_, fhat_.data());
  } else {
    rc_.interfaces(nullptr, padded_.data(), n_, fhat_.data());
  }
  dudt.resize(n_);
  const double inv_dx = 1.0 / dx_;
  for (std::size_t i = 0; i < n_; ++i) {
    const double v = -(fhat_[i + 1] - fhat_[i]) * inv_dx;
    if (!std::isfinite(v)) throw BlowUp(i, t, "non-finite flux at cell " + std::to_string(i));
    dudt[i] = v;
  }
}

}  // namespace wenomap
