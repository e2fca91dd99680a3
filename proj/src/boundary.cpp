#include "wenomap/boundary.hpp"

#include <algorithm>

#include "wenomap/errors.hpp"

namespace wenomap {

std::string bc_name(BoundaryRule bc) {
  switch (bc) {
    case BoundaryRule::Periodic: return "periodic";
    case BoundaryRule::ReflectiveWall: return "reflective_wall";
    case BoundaryRule::ZeroGradient: return "zero_gradient";
  }
  return "?";
}

BoundaryRule bc_from_name(const std::string& name) {
  for (BoundaryRule b : {BoundaryRule::Periodic, BoundaryRule::ReflectiveWall, BoundaryRule::ZeroGradient}) {
    if (bc_name(b) == name) return b;
  }
  throw ConfigError("unknown boundary rule '" + name + "'");
}

void pad(const double* u, std::size_t n, int g, BoundaryRule bc, bool odd, double* out) {
  std::copy(u, u + n, out + g);
  const auto gn = static_cast<std::size_t>(g);
  if (n < gn) throw ConfigError("grid has fewer cells than ghost layers");
  for (std::size_t k = 0; k < gn; ++k) {
    double* left = out + gn - 1 - k;  // ghost k+1 cells left of the domain
    double* right = out + gn + n + k;
    switch (bc) {
      case BoundaryRule::Periodic:
        *left = u[n - 1 - k];
        *right = u[k];
        break;
      case BoundaryRule::ReflectiveWall: {
        const double s = odd ? -1.0 : 1.0;
        *left = s * u[k];
        *right = s * u[n - 1 - k];
        break;
      }
      case BoundaryRule::ZeroGradient:
        *left = u[0];
        *right = u[n - 1];
        break;
    }
  }
}

}  // namespace wenomap
