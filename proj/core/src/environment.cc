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

#include "nhplan/environment.h"

#include <cmath>
#include <numbers>
#include <string>

#include "nhplan/errors.h"

namespace nhplan {

Rng::result_type DeriveSeed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string_view VariantName(ProblemVariant variant) {
  switch (variant) {
    case ProblemVariant::k2D:
      return "2d";
    case ProblemVariant::k3Da:
      return "3da";
    case ProblemVariant::k3Db:
      return "3db";
    case ProblemVariant::k4D:
      return "4d";
  }
  return "?";
}

ProblemVariant ParseVariant(std::string_view name) {
  for (auto variant : {ProblemVariant::k2D, ProblemVariant::k3Da,
                       ProblemVariant::k3Db, ProblemVariant::k4D}) {
    if (VariantName(variant) == name) return variant;
  }
  throw ConfigError("variant: expected one of 2d, 3da, 3db, 4d, got '" +
                    std::string(name) + "'");
}

void EpisodeConfig::Validate() const {
  if (!(eps_success > 0.0)) {
    throw ConfigError("episode.eps_success must be > 0");
  }
  if (max_steps < 1) throw ConfigError("episode.max_steps must be >= 1");
  if (!std::isfinite(terminal_bonus)) {
    throw ConfigError("episode.terminal_bonus must be finite");
  }
  limits.Validate();
}

Task SampleTask(const Limits& limits, Rng& rng) {
  constexpr double kPi = std::numbers::pi;
  std::uniform_real_distribution<double> unit(0.0, 1.0);  // [0, 1)
  Task task;
  task.start.nu = limits.nu_max * unit(rng);
  // Flipping [0, 1) gives the half-open intervals (0.5, 5] and (-pi, pi].
  const double radius = 5.0 - 4.5 * unit(rng);
  const double bearing = kPi - 2.0 * kPi * unit(rng);
  task.goal.x = radius * std::cos(bearing);
  task.goal.y = radius * std::sin(bearing);
  task.goal.theta = kPi - 2.0 * kPi * unit(rng);
  task.goal.nu = limits.nu_max * unit(rng);
  return task;
}

Observation Observe(const RobotState& state, const GoalState& goal) {
  const double dx = goal.x - state.x;
  const double dy = goal.y - state.y;
  Observation obs;
  obs.d = std::hypot(dx, dy);
  obs.theta_polar = WrapAngle(std::atan2(dy, dx) - state.theta);
  obs.d_nu = goal.nu - std::abs(state.nu);
  const double heading =
      state.nu >= 0.0 ? state.theta : state.theta + std::numbers::pi;
  obs.d_theta = WrapAngle(goal.theta - heading);
  obs.nu = state.nu;
  obs.phi = state.omega;
  return obs;
}

ErrorComponents Residuals(const RobotState& state, const GoalState& goal) {
  const Observation obs = Observe(state, goal);
  return {obs.d, std::abs(obs.d_theta), std::abs(obs.d_nu)};
}

double StateError(const ErrorComponents& r, ProblemVariant variant) {
  switch (variant) {
    case ProblemVariant::k2D:
      return r.positional;
    case ProblemVariant::k3Da:
      return std::hypot(r.positional, r.angular);
    case ProblemVariant::k3Db:
      return std::hypot(r.positional, r.velocity);
    case ProblemVariant::k4D:
      return std::sqrt(r.positional * r.positional + r.angular * r.angular +
                       r.velocity * r.velocity);
  }
  return r.positional;
}

double StateError(const RobotState& state, const GoalState& goal,
                  ProblemVariant variant) {
  return StateError(Residuals(state, goal), variant);
}

double Reward(double error) {
  if (!(error >= 0.0)) {
    throw ContractViolation("Reward: error must be non-negative");
  }
  return 1.0 / (1.0 + error);
}

UnicycleEnvironment::UnicycleEnvironment(EpisodeConfig config,
                                         Rng::result_type seed)
    : config_(config), rng_(seed) {
  config_.Validate();
}

Observation UnicycleEnvironment::Reset(std::optional<Task> task) {
  const Task t = task ? *task : SampleTask(config_.limits, rng_);
  state_ = t.start;
  goal_ = t.goal;
  step_count_ = 0;
  active_ = true;
  done_ = false;
  return Observe(state_, goal_);
}

StepOutcome UnicycleEnvironment::Step(Action action) {
  if (!active_ || done_) {
    throw ContractViolation("Step called without an active episode");
  }
  state_ = StepDynamics(state_, action, config_.limits);
  ++step_count_;

  StepOutcome out;
  out.obs = Observe(state_, goal_);
  out.error_components = {out.obs.d, std::abs(out.obs.d_theta),
                          std::abs(out.obs.d_nu)};
  out.error = StateError(out.error_components, config_.variant);
  out.reward = Reward(out.error);
  if (out.error < config_.eps_success) {
    out.success = true;
    out.done = true;
    out.reward += config_.terminal_bonus;
  } else if (step_count_ >= config_.max_steps) {
    out.done = true;
  }
  done_ = out.done;
  return out;
}

void UnicycleEnvironment::SetGoal(const GoalState& goal) {
  if (!active_) {
    throw ContractViolation("SetGoal called before Reset");
  }
  goal_ = goal;
  step_count_ = 0;
  done_ = false;
}

}  // namespace nhplan
