#include "wenomap/timeint.hpp"

#include <algorithm>
#include <cmath>

#include "wenomap/errors.hpp"

namespace wenomap {

std::string integrator_name(Integrator i) { return i == Integrator::Rk4 ? "rk4" : "tvd_rk3"; }

Integrator integrator_from_name(const std::string& name) {
  if (name == "rk4") return Integrator::Rk4;
  if (name == "tvd_rk3") return Integrator::TvdRk3;
  throw ConfigError("unknown integrator '" + name + "' (expected tvd_rk3 or rk4)");
}

std::string step_mode_name(StepMode m) {
  switch (m) {
    case StepMode::FixedDt: return "fixed_dt";
    case StepMode::Cfl: return "cfl";
    case StepMode::Accuracy: return "accuracy";
  }
  return "?";
}

StepMode step_mode_from_name(const std::string& name) {
  for (StepMode m : {StepMode::FixedDt, StepMode::Cfl, StepMode::Accuracy}) {
    if (step_mode_name(m) == name) return m;
  }
  throw ConfigError("unknown step mode '" + name + "' (expected fixed_dt, cfl or accuracy)");
}

void validate(const StepPolicy& p) {
  if (!(p.value > 0.0)) throw ConfigError("integrator.value must be positive");
  if (!(p.cap_cfl > 0.0)) throw ConfigError("integrator.cap_cfl must be positive");
}

double compute_dt(const StepPolicy& policy, double dx, int r, double max_speed) {
  validate(policy);
  const double accuracy = std::pow(dx, (2.0 * r - 1.0) / 4.0);
  switch (policy.mode) {
    case StepMode::FixedDt:
      return policy.value;
    case StepMode::Cfl:
      if (!(max_speed > 0.0)) return accuracy;
      return policy.value * dx / max_speed;
    case StepMode::Accuracy: {
      const double dt = policy.value * accuracy;
      if (!(max_speed > 0.0)) return dt;
      return std::min(dt, policy.cap_cfl * dx / max_speed);
    }
  }
  return policy.value;
}

void Stepper::step(State& u, double t, double dt) {
  const std::size_t n = u.size();
  tmp_.resize(n);
  if (kind_ == Integrator::TvdRk3) {
    rhs_(u, k1_, t);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + dt * k1_[i];
    rhs_(tmp_, k2_, t + dt);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = 0.75 * u[i] + 0.25 * (tmp_[i] + dt * k2_[i]);
    rhs_(tmp_, k3_, t + 0.5 * dt);
    for (std::size_t i = 0; i < n; ++i) u[i] = (u[i] + 2.0 * (tmp_[i] + dt * k3_[i])) / 3.0;
    return;
  }
  const double h = 0.5 * dt;
  rhs_(u, k1_, t);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + h * k1_[i];
  rhs_(tmp_, k2_, t + h);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + h * k2_[i];
  rhs_(tmp_, k3_, t + h);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + dt * k3_[i];
  rhs_(tmp_, k4_, t + dt);
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < n; ++i) u[i] += w * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
}

State tvd_rk3_step(const State& u, const RhsFn& rhs, double t, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  Stepper s(Integrator::TvdRk3, rhs);
  State out = u;
  s.step(out, t, dt);
  return out;
}

State rk4_step(const State& u, const RhsFn& rhs, double t, double dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  Stepper s(Integrator::Rk4, rhs);
  State out = u;
  s.step(out, t, dt);
  return out;
}

IntegrationResult integrate(State& u, Stepper& stepper, double t0, double t_end,
                            const std::function<double(const State&)>& dt_of,
                            const std::function<void(const State&, double, std::size_t)>& observer) {
  IntegrationResult res{t0, 0};
  double t = t0;
  while (t < t_end) {
    double dt = dt_of(u);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw BlowUp(0, t, "invalid time step");
    bool last = false;
    if (t + dt >= t_end - 1e-14 * std::abs(t_end)) {
      dt = t_end - t;
      last = true;
    }
    stepper.step(u, t, dt);
    t = last ? t_end : t + dt;
    ++res.steps;
    if (observer) observer(u, t, res.steps);
  }
  res.t = t;
  return res;
}

IntegrationResult integrate_uniform(State& u, Stepper& stepper, double t0, double t_end, double dt_max,
                                    const std::function<void(const State&, double, std::size_t)>& observer) {
  if (!(dt_max > 0.0)) throw ConfigError("dt must be positive");
  const double span = t_end - t0;
  const auto steps = static_cast<std::size_t>(std::ceil(span / dt_max - 1e-9));
  IntegrationResult res{t0, 0};
  if (steps == 0) return res;
  const double dt = span / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    stepper.step(u, t, dt);
    ++res.steps;
    if (observer) observer(u, k + 1 == steps ? t_end : t + dt, res.steps);
  }
  res.t = t_end;
  return res;
}

}  // namespace wenomap
