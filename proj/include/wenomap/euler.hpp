#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "wenomap/boundary.hpp"
#include "wenomap/strategy.hpp"

namespace wenomap {

struct GasModel {
  double gamma = 1.4;
};

struct ConservedState {
  double rho = 1.0;
  double mom = 0.0;
  double E = 2.5;
};

struct PrimitiveState {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

using Flux3 = std::array<double, 3>;

/// Throws StateError for nonpositive density or pressure.
ConservedState prim_to_cons(double rho, double u, double p, const GasModel& gas);
PrimitiveState cons_to_prim(const ConservedState& s, const GasModel& gas);

Flux3 physical_flux(const ConservedState& s, const GasModel& gas);

struct SplitFlux {
  Flux3 plus{};
  Flux3 minus{};
};

/// Steger-Warming splitting with eigenvalue smoothing
/// lambda± = (lambda ± sqrt(lambda^2 + eps_sw^2)) / 2.
SplitFlux steger_warming_split(const ConservedState& s, const GasModel& gas, double eps_sw);

struct EulerOptions {
  GasModel gas{};
  /// Smoothing width relative to the local sound speed.
  double eps_sw_rel = 1e-6;
  BoundaryRule bc = BoundaryRule::ZeroGradient;
};

/// Semi-discrete right-hand side for the 1-D Euler equations with
/// component-wise reconstruction of the split fluxes.
///
/// States are stored component-major: u[c * n + i] for c in {rho, mom, E}.
class EulerRhs {
 public:
  EulerRhs(const WeightingStrategy& strategy, double dx, std::size_t n, EulerOptions opt = {});

  /// Throws BlowUp on a nonphysical state or a non-finite flux.
  void operator()(const std::vector<double>& u, std::vector<double>& dudt, double t);

  std::size_t cells() const { return n_; }
  double max_wave_speed(const std::vector<double>& u) const;
  const Reconstructor& reconstructor() const { return rc_; }

 private:
  Reconstructor rc_;
  EulerOptions opt_;
  double dx_;
  std::size_t n_;
  int g_;
  std::vector<double> padded_;       // 3 * (n + 2g)
  std::vector<double> fplus_, fminus_;
  std::vector<double> fhat_;
};

/// One-shot form of EulerRhs for callers that do not step in time.
std::vector<double> euler_rhs(const std::vector<double>& u, const WeightingStrategy& strategy, const GasModel& gas,
                              double dx, BoundaryRule bc, double eps_sw_rel = 1e-6);

}  // namespace wenomap
