#pragma once

#include <cstddef>
#include <string>

namespace wenomap {

enum class BoundaryRule { Periodic, ReflectiveWall, ZeroGradient };

std::string bc_name(BoundaryRule bc);
BoundaryRule bc_from_name(const std::string& name);  // throws ConfigError

/// Copies n interior values into out[g .. g+n) and fills g ghost values on
/// each side. For ReflectiveWall, `odd` negates the mirrored values (used
/// for momentum).
void pad(const double* u, std::size_t n, int g, BoundaryRule bc, bool odd, double* out);

}  // namespace wenomap
