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

#ifndef NHPLAN_ENVIRONMENT_H_
#define NHPLAN_ENVIRONMENT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "nhplan/kinematics.h"

namespace nhplan {

using Rng = std::mt19937_64;

// Independent seed for sub-stream `stream` of a run seeded with `base`.
Rng::result_type DeriveSeed(std::uint64_t base, std::uint64_t stream);

// Target pose and (unsigned) target speed.
struct GoalState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // (-pi, pi]
  double nu = 0.0;     // in [0, nu_max]
};

inline constexpr int kObservationDim = 6;
inline constexpr int kActionDim = 2;

// Goal expressed relative to the robot, plus the robot's own velocities.
struct Observation {
  double d = 0.0;            // distance to goal, m
  double theta_polar = 0.0;  // bearing of goal in the robot frame
  double d_nu = 0.0;         // nu_goal - |nu|
  double d_theta = 0.0;      // heading residual, relaxed for reversing
  double nu = 0.0;
  double phi = 0.0;  // robot turn rate

  std::array<double, kObservationDim> ToArray() const {
    return {d, theta_polar, d_nu, d_theta, nu, phi};
  }
};

enum class ProblemVariant { k2D, k3Da, k3Db, k4D };

std::string_view VariantName(ProblemVariant variant);  // "2d", "3da", ...
// Throws ConfigError for unknown names.
ProblemVariant ParseVariant(std::string_view name);

struct ErrorComponents {
  double positional = 0.0;  // m
  double angular = 0.0;     // |d_theta|, rad
  double velocity = 0.0;    // |d_nu|, m/s
};

struct EpisodeConfig {
  double eps_success = 0.5;
  int max_steps = 200;
  double terminal_bonus = 100.0;
  ProblemVariant variant = ProblemVariant::k4D;
  Limits limits;

  void Validate() const;
};

struct Task {
  RobotState start;
  GoalState goal;
};

struct StepOutcome {
  Observation obs;
  double reward = 0.0;
  bool done = false;
  bool success = false;
  double error = 0.0;
  ErrorComponents error_components;
};

// Start at the origin facing +x with nu0 ~ U[0, nu_max]; goal at distance
// U(0.5, 5.0] and bearing U(-pi, pi], heading U(-pi, pi], speed U[0, nu_max].
Task SampleTask(const Limits& limits, Rng& rng);

Observation Observe(const RobotState& state, const GoalState& goal);

ErrorComponents Residuals(const RobotState& state, const GoalState& goal);

// Euclidean norm of the residuals the variant cares about (unit weights).
double StateError(const ErrorComponents& residuals, ProblemVariant variant);
double StateError(const RobotState& state, const GoalState& goal,
                  ProblemVariant variant);

// 1 / (1 + e); e must be non-negative.
double Reward(double error);

// Episode interface shared by the simulator and test doubles.
class GoalEnvironment {
 public:
  virtual ~GoalEnvironment() = default;

  // Installs `task`, or samples a fresh one when empty.
  virtual Observation Reset(std::optional<Task> task = std::nullopt) = 0;
  virtual StepOutcome Step(Action action) = 0;
  // Replaces the goal, keeps the robot state, restarts the step budget.
  virtual void SetGoal(const GoalState& goal) = 0;

  virtual const RobotState& state() const = 0;
  virtual const GoalState& goal() const = 0;
  virtual const EpisodeConfig& config() const = 0;
  virtual int step_count() const = 0;
  virtual bool done() const = 0;
};

// Deterministic unicycle world with goal-conditioned reward.
class UnicycleEnvironment : public GoalEnvironment {
 public:
  UnicycleEnvironment(EpisodeConfig config, Rng::result_type seed);

  Observation Reset(std::optional<Task> task = std::nullopt) override;
  StepOutcome Step(Action action) override;
  void SetGoal(const GoalState& goal) override;

  const RobotState& state() const override { return state_; }
  const GoalState& goal() const override { return goal_; }
  const EpisodeConfig& config() const override { return config_; }
  int step_count() const override { return step_count_; }
  bool done() const override { return done_; }

 private:
  EpisodeConfig config_;
  Rng rng_;
  RobotState state_;
  GoalState goal_;
  int step_count_ = 0;
  bool active_ = false;
  bool done_ = false;
};

}  // namespace nhplan

#endif  // NHPLAN_ENVIRONMENT_H_
