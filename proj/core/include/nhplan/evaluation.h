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

#ifndef NHPLAN_EVALUATION_H_
#define NHPLAN_EVALUATION_H_

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nhplan/agent.h"
#include "nhplan/environment.h"

namespace nhplan {

using Policy = std::function<Action(const Observation&)>;

// Greedy (test-mode) policy of `agent`; the agent must outlive the policy.
Policy GreedyPolicy(const DdpgAgent& agent);

struct EpisodeRecord {
  int episode = 0;
  Task task;
  bool success = false;
  int steps = 0;
  double error = 0.0;
  ErrorComponents final_error;  // as reported by the last StepOutcome
  double spline_duration = 0.0;
  std::optional<double> duration_ratio;  // successful episodes only
};

struct SummaryStats {
  int count = 0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // population standard deviation
};

SummaryStats Summarize(std::span<const double> values);

// Per-dimension statistics; angular errors are in degrees.
struct ErrorStats {
  SummaryStats positional;
  SummaryStats angular_deg;
  SummaryStats velocity;
};

struct EvalReport {
  ProblemVariant variant = ProblemVariant::k4D;
  int episodes = 0;
  int successes = 0;
  double success_rate = 0.0;
  ErrorStats all;         // every episode
  ErrorStats successful;  // successful episodes only
  SummaryStats duration_ratio;
  std::vector<EpisodeRecord> records;
};

// Runs `n_episodes` tasks sampled by `env.Reset()`.
EvalReport Evaluate(const Policy& policy, GoalEnvironment& env,
                    int n_episodes);
// Runs the given tasks in order.
EvalReport Evaluate(const Policy& policy, GoalEnvironment& env,
                    std::span<const Task> tasks);
// Greedy evaluation of `agent` on a fresh environment seeded from `rng`.
EvalReport Evaluate(const DdpgAgent& agent, const EpisodeConfig& config,
                    int n_episodes, Rng& rng);

struct Scenario {
  RobotState initial;
  std::vector<GoalState> goals;
};

struct TracePoint {
  double t = 0.0;
  RobotState state;
  int goal_index = 0;
};

struct LegResult {
  int goal_index = 0;
  bool reached = false;
  int steps = 0;
  double error = 0.0;
  ErrorComponents final_error;
};

struct ScenarioResult {
  std::vector<TracePoint> trace;
  std::vector<LegResult> legs;

  bool AllReached() const;
};

// Drives the policy through the goals in order, switching to the next goal
// after each success or after a leg exhausts its step budget.
ScenarioResult RunScenario(const Policy& policy, GoalEnvironment& env,
                           const Scenario& scenario);

struct TrainingCurves {
  std::vector<double> positional;  // m
  std::vector<double> angular_deg;
  std::vector<double> velocity;  // m/s
  std::vector<double> positional_smooth;
  std::vector<double> angular_smooth;
  std::vector<double> velocity_smooth;
};

// Trailing moving average; the first window-1 entries average what exists.
std::vector<double> MovingAverage(std::span<const double> values, int window);

// Scales so that the maximum maps to 100.
std::vector<double> NormalizeToPercent(std::span<const double> values);

// Per-episode final errors of a training log. With `normalize`, each raw and
// smoothed series is expressed in percent of its raw maximum.
TrainingCurves ExtractTrainingCurves(const TrainingLog& log, int window = 50,
                                     bool normalize = false);

// First index after the peak of series[start..] at which the series falls
// below fraction * peak.
std::optional<int> FirstDropBelow(std::span<const double> series, int start,
                                  double fraction);

}  // namespace nhplan

#endif  // NHPLAN_EVALUATION_H_
