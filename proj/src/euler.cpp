#include "wenomap/euler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wenomap/errors.hpp"

namespace wenomap {
namespace {

void check_gas(const GasModel& gas) {
  if (!(gas.gamma > 1.0)) throw ConfigError("gas.gamma must exceed 1");
}

}  // namespace

ConservedState prim_to_cons(double rho, double u, double p, const GasModel& gas) {
  check_gas(gas);
  if (!(rho > 0.0)) throw StateError("nonpositive density");
  if (!(p > 0.0)) throw StateError("nonpositive pressure");
  return {rho, rho * u, p / (gas.gamma - 1.0) + 0.5 * rho * u * u};
}

PrimitiveState cons_to_prim(const ConservedState& s, const GasModel& gas) {
  if (!(s.rho > 0.0)) throw StateError("nonpositive density");
  const double u = s.mom / s.rho;
  const double p = (gas.gamma - 1.0) * (s.E - 0.5 * s.mom * u);
  if (!(p > 0.0)) throw StateError("nonpositive pressure");
  return {s.rho, u, p};
}

Flux3 physical_flux(const ConservedState& s, const GasModel& gas) {
  const PrimitiveState w = cons_to_prim(s, gas);
  return {s.mom, s.mom * w.u + w.p, (s.E + w.p) * w.u};
}

SplitFlux steger_warming_split(const ConservedState& s, const GasModel& gas, double eps_sw) {
  if (!(eps_sw >= 0.0)) throw ConfigError("eps_sw must be nonnegative");
  const PrimitiveState w = cons_to_prim(s, gas);
  const double g = gas.gamma;
  const double c = std::sqrt(g * w.p / w.rho);
  const double u = w.u;
  const double h = c * c / (g - 1.0) + 0.5 * u * u;
  const double lam[3] = {u - c, u, u + c};
  const double e2 = eps_sw * eps_sw;
  double lp[3], lm[3];
  for (int i = 0; i < 3; ++i) {
    const double root = std::sqrt(lam[i] * lam[i] + e2);
    lp[i] = 0.5 * (lam[i] + root);
    lm[i] = 0.5 * (lam[i] - root);
  }
  const double k = w.rho / (2.0 * g);
  auto assemble = [&](const double* l) -> Flux3 {
    return {k * (l[0] + 2.0 * (g - 1.0) * l[1] + l[2]),
            k * ((u - c) * l[0] + 2.0 * (g - 1.0) * u * l[1] + (u + c) * l[2]),
            k * ((h - u * c) * l[0] + (g - 1.0) * u * u * l[1] + (h + u * c) * l[2])};
  };
  return {assemble(lp), assemble(lm)};
}

EulerRhs::EulerRhs(const WeightingStrategy& strategy, double dx, std::size_t n, EulerOptions opt)
    : rc_(strategy, dx), opt_(opt), dx_(dx), n_(n), g_(rc_.ghost()) {
  check_gas(opt_.gas);
  if (!(opt_.eps_sw_rel >= 0.0)) throw ConfigError("euler.eps_sw must be nonnegative");
  if (n < static_cast<std::size_t>(2 * strategy.r + 1)) throw ConfigError("grid too small for the stencil");
  const std::size_t np = n + 2 * static_cast<std::size_t>(g_);
  padded_.resize(3 * np);
  fplus_.resize(3 * np);
  fminus_.resize(3 * np);
  fhat_.resize(n + 1);
}

void EulerRhs::operator()(const std::vector<double>& u, std::vector<double>& dudt, double t) {
  const std::size_t n = n_;
  const std::size_t np = n + 2 * static_cast<std::size_t>(g_);
  for (int c = 0; c < 3; ++c) pad(u.data() + c * n, n, g_, opt_.bc, c == 1, padded_.data() + c * np);

  for (std::size_t i = 0; i < np; ++i) {
    const ConservedState s{padded_[i], padded_[np + i], padded_[2 * np + i]};
    SplitFlux f;
    try {
      const PrimitiveState w = cons_to_prim(s, opt_.gas);
      const double cs = std::sqrt(opt_.gas.gamma * w.p / w.rho);
      f = steger_warming_split(s, opt_.gas, opt_.eps_sw_rel * cs);
    } catch (const StateError& e) {
      const std::ptrdiff_t cell = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(i) - g_, 0,
                                                              static_cast<std::ptrdiff_t>(n) - 1);
      std::ostringstream msg;
      msg << e.what() << " at cell " << cell << ", t=" << t;
      throw BlowUp(static_cast<std::size_t>(cell), t, msg.str());
    }
    for (int c = 0; c < 3; ++c) {
      fplus_[c * np + i] = f.plus[c];
      fminus_[c * np + i] = f.minus[c];
    }
  }

  dudt.resize(3 * n);
  const double inv_dx = 1.0 / dx_;
  for (int c = 0; c < 3; ++c) {
    rc_.interfaces(fplus_.data() + c * np, fminus_.data() + c * np, n, fhat_.data());
    double* out = dudt.data() + c * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = -(fhat_[i + 1] - fhat_[i]) * inv_dx;
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite flux at cell " << i << ", t=" << t;
        throw BlowUp(i, t, msg.str());
      }
      out[i] = v;
    }
  }
}

double EulerRhs::max_wave_speed(const std::vector<double>& u) const {
  double smax = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const PrimitiveState w = cons_to_prim({u[i], u[n_ + i], u[2 * n_ + i]}, opt_.gas);
    smax = std::max(smax, std::abs(w.u) + std::sqrt(opt_.gas.gamma * w.p / w.rho));
  }
  return smax;
}

std::vector<double> euler_rhs(const std::vector<double>& u, const WeightingStrategy& strategy, const GasModel& gas,
                              double dx, BoundaryRule bc, double eps_sw_rel) {
  EulerOptions opt;
  opt.gas = gas;
  opt.bc = bc;
  opt.eps_sw_rel = eps_sw_rel;
  EulerRhs rhs(strategy, dx, u.size() / 3, opt);
  std::vector<double> out;
  rhs(u, out, 0.0);
  return out;
}

}  // namespace wenomap
