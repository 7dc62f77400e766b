// Copyright 2026 The nhplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nhplan/kinematics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nhplan/errors.h"

namespace nhplan {

namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string("limits.") + name +
                      " must be strictly positive, got " +
                      std::to_string(value));
  }
}

}  // namespace

void Limits::Validate() const {
  RequirePositive(a_max_linear, "a_max_linear");
  RequirePositive(a_max_angular, "a_max_angular");
  RequirePositive(a_max_lateral, "a_max_lateral");
  RequirePositive(nu_max, "nu_max");
  RequirePositive(omega_max, "omega_max");
  RequirePositive(dt, "dt");
}

double WrapAngle(double angle) {
  if (!std::isfinite(angle)) {
    throw ContractViolation("WrapAngle: non-finite angle");
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

Action ClipAction(Action action) {
  return {std::clamp(action.u_lin, -1.0, 1.0),
          std::clamp(action.u_ang, -1.0, 1.0)};
}

VelocityTargets ClampTargets(const RobotState& state, Action action,
                             const Limits& limits) {
  action = ClipAction(action);
  const double dnu_max = limits.a_max_linear * limits.dt;
  const double domega_max = limits.a_max_angular * limits.dt;

  double nu = std::clamp(state.nu + action.u_lin * dnu_max, -limits.nu_max,
                         limits.nu_max);
  double omega = std::clamp(state.omega + action.u_ang * domega_max,
                            -limits.omega_max, limits.omega_max);

  if (std::abs(nu * omega) <= limits.a_max_lateral) return {nu, omega};

  const double sign = omega > 0.0 ? 1.0 : -1.0;
  const double rescaled = sign * limits.a_max_lateral / std::abs(nu);
  // Edge of the reachable turn-rate window on the side of zero.
  const double window_edge =
      sign > 0.0 ? std::max(state.omega - domega_max, -limits.omega_max)
                 : std::min(state.omega + domega_max, limits.omega_max);
  if (sign * rescaled >= sign * window_edge) {
    return {nu, rescaled};
  }
  // omega cannot drop that far in one step; slow down to meet the bound.
  omega = window_edge;
  nu = (nu > 0.0 ? 1.0 : -1.0) * limits.a_max_lateral / std::abs(omega);
  return {nu, omega};
}

RobotState Integrate(const RobotState& state, VelocityTargets targets,
                     double dt) {
  RobotState next;
  next.x = state.x + targets.nu * std::cos(state.theta) * dt;
  next.y = state.y + targets.nu * std::sin(state.theta) * dt;
  next.theta = WrapAngle(state.theta + targets.omega * dt);
  next.nu = targets.nu;
  next.omega = targets.omega;
  return next;
}

RobotState StepDynamics(const RobotState& state, Action action,
                        const Limits& limits) {
  return Integrate(state, ClampTargets(state, action, limits), limits.dt);
}

bool IsFeasible(const RobotState& state, const Limits& limits,
                double tolerance) {
  return std::abs(state.nu) <= limits.nu_max + tolerance &&
         std::abs(state.omega) <= limits.omega_max + tolerance &&
         std::abs(state.nu * state.omega) <= limits.a_max_lateral + tolerance;
}

}  // namespace nhplan
