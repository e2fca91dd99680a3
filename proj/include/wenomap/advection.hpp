#pragma once

#include <cstddef>
#include <vector>

#include "wenomap/boundary.hpp"
#include "wenomap/strategy.hpp"

namespace wenomap {

/// u_t + a u_x = 0 with constant speed a; upwinding follows the sign of a.
class AdvectionRhs {
 public:
  AdvectionRhs(const WeightingStrategy& strategy, double dx, std::size_t n, double speed = 1.0,
               BoundaryRule bc = BoundaryRule::Periodic);

  /// Throws BlowUp on a non-finite result.
  void operator()(const std::vector<double>& u, std::vector<double>& dudt, double t);

  double speed() const { return speed_; }
  const Reconstructor& reconstructor() const { return rc_; }

 private:
  Reconstructor rc_;
  double dx_;
  std::size_t n_;
  double speed_;
  BoundaryRule bc_;
  std::vector<double> padded_;
  std::vector<double> fhat_;
};

}  // namespace wenomap
