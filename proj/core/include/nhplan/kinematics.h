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

#ifndef NHPLAN_KINEMATICS_H_
#define NHPLAN_KINEMATICS_H_

namespace nhplan {

// Kinodynamic limits of the unicycle. Angular acceleration is in rad/s^2.
struct Limits {
  double a_max_linear = 2.2;   // m/s^2
  double a_max_angular = 2.0;  // rad/s^2
  double a_max_lateral = 1.0;  // m/s^2, bound on |nu * omega|
  double nu_max = 4.0;         // m/s
  double omega_max = 4.5;      // rad/s
  double dt = 0.1;             // s

  // Throws ConfigError naming the first non-positive field.
  void Validate() const;
};

// Pose plus the velocities the robot currently executes.
struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // (-pi, pi]
  double nu = 0.0;     // signed forward velocity
  double omega = 0.0;  // signed turn rate
};

// Normalized accelerations as emitted by the actor, each in [-1, 1].
struct Action {
  double u_lin = 0.0;
  double u_ang = 0.0;
};

struct VelocityTargets {
  double nu = 0.0;
  double omega = 0.0;
};

// Maps any finite angle to its representative in (-pi, pi].
double WrapAngle(double angle);

// Clips both components to [-1, 1].
Action ClipAction(Action action);

// Velocity targets for the next step. Accelerations are scaled by the limits
// and bounded per step, speeds are clipped to nu_max / omega_max, and when
// |nu * omega| would exceed a_max_lateral the turn rate is shrunk to
// a_max_lateral / |nu|. If that shrink would leave the angular acceleration
// window, omega stops at the window edge and nu yields instead, so that from
// any feasible state all five inequalities hold.
VelocityTargets ClampTargets(const RobotState& state, Action action,
                             const Limits& limits);

// Forward-Euler unicycle update driven by already-clamped targets.
RobotState Integrate(const RobotState& state, VelocityTargets targets,
                     double dt);

// ClampTargets followed by Integrate.
RobotState StepDynamics(const RobotState& state, Action action,
                        const Limits& limits);

// True when `state` respects the speed, turn-rate and lateral bounds.
bool IsFeasible(const RobotState& state, const Limits& limits,
                double tolerance = 1e-9);

}  // namespace nhplan

#endif  // NHPLAN_KINEMATICS_H_
