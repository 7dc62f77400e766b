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

#include "nhplan/baseline.h"

#include <algorithm>
#include <cmath>

#include "nhplan/errors.h"

namespace nhplan {

double VelocityRamp::SpeedAt(double t) const {
  t = std::clamp(t, 0.0, Duration());
  if (t <= t_accel) return v0 + accel * t;
  if (t <= t_accel + t_cruise) return v_peak;
  return v_peak - accel * (t - t_accel - t_cruise);
}

double VelocityRamp::DistanceAt(double t) const {
  t = std::clamp(t, 0.0, Duration());
  const double ta = std::min(t, t_accel);
  double s = v0 * ta + 0.5 * accel * ta * ta;
  if (t <= t_accel) return s;
  const double tc = std::min(t - t_accel, t_cruise);
  s += v_peak * tc;
  if (t <= t_accel + t_cruise) return s;
  const double td = t - t_accel - t_cruise;
  return s + v_peak * td - 0.5 * accel * td * td;
}

VelocityRamp PlanRamp(double length, double v0, double vf, double accel,
                      double v_max) {
  if (!(length >= 0.0) || !(accel > 0.0) || !(v_max > 0.0)) {
    throw ContractViolation("PlanRamp: invalid length, accel or v_max");
  }
  VelocityRamp ramp;
  ramp.length = length;
  ramp.accel = accel;
  ramp.v0 = std::min(std::abs(v0), v_max);
  ramp.vf = std::min(std::abs(vf), v_max);
  const double a = accel;
  const double u0 = ramp.v0;
  const double uf = ramp.vf;

  const double peak_sq = (2.0 * a * length + u0 * u0 + uf * uf) / 2.0;
  if (peak_sq >= v_max * v_max) {
    ramp.v_peak = v_max;
    ramp.t_accel = (v_max - u0) / a;
    ramp.t_decel = (v_max - uf) / a;
    const double ramp_dist =
        (v_max * v_max - u0 * u0) / (2.0 * a) +
        (v_max * v_max - uf * uf) / (2.0 * a);
    ramp.t_cruise = std::max(0.0, (length - ramp_dist) / v_max);
    ramp.final_speed = uf;
  } else if (peak_sq >= std::max(u0 * u0, uf * uf)) {
    ramp.v_peak = std::sqrt(peak_sq);
    ramp.t_accel = (ramp.v_peak - u0) / a;
    ramp.t_decel = (ramp.v_peak - uf) / a;
    ramp.final_speed = uf;
  } else if (u0 > uf) {
    // Cannot shed enough speed: brake over the whole length.
    ramp.v_peak = u0;
    ramp.final_speed = std::sqrt(std::max(0.0, u0 * u0 - 2.0 * a * length));
    ramp.t_decel = (u0 - ramp.final_speed) / a;
  } else {
    ramp.final_speed = std::sqrt(u0 * u0 + 2.0 * a * length);
    ramp.v_peak = ramp.final_speed;
    ramp.t_accel = (ramp.final_speed - u0) / a;
  }
  return ramp;
}

std::array<double, 2> HermiteCurve::Position(double s) const {
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return {h00 * p0[0] + h10 * m0[0] + h01 * p1[0] + h11 * m1[0],
          h00 * p0[1] + h10 * m0[1] + h01 * p1[1] + h11 * m1[1]};
}

std::array<double, 2> HermiteCurve::Derivative(double s) const {
  const double s2 = s * s;
  const double d00 = 6 * s2 - 6 * s;
  const double d10 = 3 * s2 - 4 * s + 1;
  const double d01 = -6 * s2 + 6 * s;
  const double d11 = 3 * s2 - 2 * s;
  return {d00 * p0[0] + d10 * m0[0] + d01 * p1[0] + d11 * m1[0],
          d00 * p0[1] + d10 * m0[1] + d01 * p1[1] + d11 * m1[1]};
}

namespace {

double Speed(const HermiteCurve& curve, double s) {
  const auto d = curve.Derivative(s);
  return std::hypot(d[0], d[1]);
}

}  // namespace

double ArcLength(const HermiteCurve& curve, int intervals) {
  if (intervals < 2) throw ContractViolation("ArcLength: intervals < 2");
  if (intervals % 2 != 0) ++intervals;
  const double h = 1.0 / intervals;
  double sum = Speed(curve, 0.0) + Speed(curve, 1.0);
  for (int i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * Speed(curve, i * h);
  }
  return sum * h / 3.0;
}

SplinePlan PlanSpline(const RobotState& start, const GoalState& goal,
                      const Limits& limits, int quadrature_intervals) {
  const double dist = std::hypot(goal.x - start.x, goal.y - start.y);
  if (!(dist > 1e-12)) {
    throw ContractViolation("PlanSpline: start and goal positions coincide");
  }
  SplinePlan plan;
  HermiteCurve& c = plan.curve;
  c.p0 = {start.x, start.y};
  c.p1 = {goal.x, goal.y};
  c.m0 = {dist * std::cos(start.theta), dist * std::sin(start.theta)};
  c.m1 = {dist * std::cos(goal.theta), dist * std::sin(goal.theta)};
  plan.arc_length = ArcLength(c, quadrature_intervals);
  plan.ramp = PlanRamp(plan.arc_length, start.nu, goal.nu,
                       limits.a_max_linear, limits.nu_max);
  plan.duration = plan.ramp.Duration();

  // Cumulative arc length table (trapezoid) for distance -> parameter.
  const int n = std::max(quadrature_intervals, 2);
  std::vector<double> cumulative(n + 1, 0.0);
  double prev_speed = Speed(c, 0.0);
  for (int i = 1; i <= n; ++i) {
    const double speed = Speed(c, static_cast<double>(i) / n);
    cumulative[i] = cumulative[i - 1] + 0.5 * (prev_speed + speed) / n;
    prev_speed = speed;
  }
  const double scale = plan.arc_length / cumulative.back();
  auto parameter_at = [&](double distance) {
    const double target = distance / scale;
    const auto it =
        std::lower_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.begin()) return 0.0;
    if (it == cumulative.end()) return 1.0;
    const auto i = static_cast<int>(it - cumulative.begin());
    const double span = cumulative[i] - cumulative[i - 1];
    const double frac = span > 0.0 ? (target - cumulative[i - 1]) / span : 0.0;
    return (i - 1 + frac) / n;
  };

  const int samples =
      static_cast<int>(std::ceil(plan.duration / limits.dt - 1e-9));
  for (int k = 0; k <= samples; ++k) {
    Waypoint w;
    w.t = std::min(k * limits.dt, plan.duration);
    const double s = parameter_at(plan.ramp.DistanceAt(w.t));
    const auto p = c.Position(s);
    const auto d = c.Derivative(s);
    w.x = p[0];
    w.y = p[1];
    w.theta = std::atan2(d[1], d[0]);
    w.nu = plan.ramp.SpeedAt(w.t);
    plan.waypoints.push_back(w);
  }
  for (size_t k = 1; k < plan.waypoints.size(); ++k) {
    Waypoint& w = plan.waypoints[k];
    const double dt = w.t - plan.waypoints[k - 1].t;
    w.omega = dt > 0.0 ? WrapAngle(w.theta - plan.waypoints[k - 1].theta) / dt
                       : 0.0;
  }
  return plan;
}

double DurationRatio(const SplinePlan& plan, int agent_steps, double dt) {
  if (!(plan.duration > 0.0)) {
    throw ContractViolation("DurationRatio: spline duration must be > 0");
  }
  return agent_steps * dt / plan.duration;
}

}  // namespace nhplan
