#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace wenomap {

using State = std::vector<double>;
using RhsFn = std::function<void(const State& u, State& dudt, double t)>;

/// Shu-Osher three-stage TVD Runge-Kutta step.
State tvd_rk3_step(const State& u, const RhsFn& rhs, double t, double dt);
/// Classical four-stage Runge-Kutta step.
State rk4_step(const State& u, const RhsFn& rhs, double t, double dt);

enum class Integrator { TvdRk3, Rk4 };
std::string integrator_name(Integrator i);
Integrator integrator_from_name(const std::string& name);  // throws ConfigError

enum class StepMode { FixedDt, Cfl, Accuracy };
std::string step_mode_name(StepMode m);
StepMode step_mode_from_name(const std::string& name);  // throws ConfigError

struct StepPolicy {
  StepMode mode = StepMode::Cfl;
  /// dt (fixed), CFL number (cfl) or safety factor on dx^((2r-1)/4) (accuracy).
  double value = 0.5;
  /// Accuracy mode only: dt is also limited to cap_cfl * dx / speed.
  double cap_cfl = 0.8;
};

void validate(const StepPolicy& p);

/// Step size for grid spacing dx, scheme order parameter r and the current
/// maximum wave speed. A zero wave speed returns the policy cap (cfl mode:
/// the accuracy-mode bound; fixed mode: the fixed value).
double compute_dt(const StepPolicy& policy, double dx, int r, double max_speed);

/// True when dt does not depend on the solution (fixed or accuracy mode).
inline bool uniform_steps(const StepPolicy& p) { return p.mode != StepMode::Cfl; }

struct IntegrationResult {
  double t = 0.0;
  std::size_t steps = 0;
};

/// Reusable stepper with preallocated stage buffers.
class Stepper {
 public:
  Stepper(Integrator kind, RhsFn rhs) : kind_(kind), rhs_(std::move(rhs)) {}
  void step(State& u, double t, double dt);
  Integrator kind() const { return kind_; }

 private:
  Integrator kind_;
  RhsFn rhs_;
  State k1_, k2_, k3_, k4_, tmp_;
};

/// Advances u from t0 to t_end. `dt_of(u)` supplies the step bound; the last
/// step is shortened to land exactly on t_end. `observer(u, t, step)` runs
/// after every step.
IntegrationResult integrate(State& u, Stepper& stepper, double t0, double t_end,
                            const std::function<double(const State&)>& dt_of,
                            const std::function<void(const State&, double, std::size_t)>& observer = {});

/// Fixed-step variant: n = ceil((t_end - t0) / dt_max) equal steps.
IntegrationResult integrate_uniform(State& u, Stepper& stepper, double t0, double t_end, double dt_max,
                                    const std::function<void(const State&, double, std::size_t)>& observer = {});

}  // namespace wenomap
