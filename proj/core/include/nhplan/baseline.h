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

#ifndef NHPLAN_BASELINE_H_
#define NHPLAN_BASELINE_H_

#include <array>
#include <vector>

#include "nhplan/environment.h"
#include "nhplan/kinematics.h"

namespace nhplan {

// Bang-cruise-bang speed profile covering `length` metres: accelerate at
// `accel` from v0 towards v_peak, cruise, then decelerate to vf at the last
// moment. When the distance is too short to touch nu_max the profile is
// triangular; when it is too short even to change speed from v0 to vf, a
// single full-rate ramp is used and final_speed differs from the requested
// vf.
struct VelocityRamp {
  double length = 0.0;
  double accel = 0.0;
  double v0 = 0.0;
  double v_peak = 0.0;
  double vf = 0.0;           // requested final speed
  double final_speed = 0.0;  // speed actually reached at `length`
  double t_accel = 0.0;
  double t_cruise = 0.0;
  double t_decel = 0.0;

  double Duration() const { return t_accel + t_cruise + t_decel; }
  double SpeedAt(double t) const;
  double DistanceAt(double t) const;
};

// Speeds are taken as magnitudes and clipped to v_max.
VelocityRamp PlanRamp(double length, double v0, double vf, double accel,
                      double v_max);

// Cubic Hermite curve on s in [0, 1].
struct HermiteCurve {
  std::array<double, 2> p0{};
  std::array<double, 2> p1{};
  std::array<double, 2> m0{};  // tangent at s = 0
  std::array<double, 2> m1{};  // tangent at s = 1

  std::array<double, 2> Position(double s) const;
  std::array<double, 2> Derivative(double s) const;
};

struct Waypoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double nu = 0.0;
  double omega = 0.0;
};

// Reference trajectory: the geometric path ignores every angular, lateral
// and turn-rate limit, only the speed profile honors nu_max and
// a_max_linear.
struct SplinePlan {
  HermiteCurve curve;
  double arc_length = 0.0;
  VelocityRamp ramp;
  double duration = 0.0;
  std::vector<Waypoint> waypoints;  // sampled every limits.dt
};

// Composite Simpson estimate of the curve length.
double ArcLength(const HermiteCurve& curve, int intervals = 1000);

// Hermite path from the start pose to the goal pose with tangents of
// magnitude equal to the endpoint distance, timed by a ramp from |start.nu|
// through nu_max to goal.nu. Throws ContractViolation for coincident
// endpoints.
SplinePlan PlanSpline(const RobotState& start, const GoalState& goal,
                      const Limits& limits, int quadrature_intervals = 1000);

// Agent duration (steps * dt) over the spline duration.
double DurationRatio(const SplinePlan& plan, int agent_steps, double dt);

}  // namespace nhplan

#endif  // NHPLAN_BASELINE_H_
