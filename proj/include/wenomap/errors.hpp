#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wenomap {

/// Invalid run configuration, unsupported order, malformed preset.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mapping parameters outside their admissible range.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-physical Euler state (nonpositive density or pressure).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scheme failure during time integration. Carries the first offending cell
/// and the simulation time so the harness can record it as an outcome.
class BlowUp : public std::runtime_error {
 public:
  BlowUp(std::size_t cell, double time, const std::string& what)
      : std::runtime_error(what), cell_(cell), time_(time) {}

  std::size_t cell() const { return cell_; }
  double time() const { return time_; }

 private:
  std::size_t cell_;
  double time_;
};

}  // namespace wenomap
