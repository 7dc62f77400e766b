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

#include "nhplan/evaluation.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "nhplan/baseline.h"
#include "nhplan/errors.h"

namespace nhplan {
namespace {

// Jumps straight onto the goal on the first step.
class TeleportEnvironment : public GoalEnvironment {
 public:
  explicit TeleportEnvironment(EpisodeConfig config)
      : config_(config), rng_(1) {}

  Observation Reset(std::optional<Task> task) override {
    const Task t = task ? *task : SampleTask(config_.limits, rng_);
    state_ = t.start;
    goal_ = t.goal;
    steps_ = 0;
    done_ = false;
    return Observe(state_, goal_);
  }
  StepOutcome Step(Action) override {
    state_ = {goal_.x, goal_.y, goal_.theta, goal_.nu, 0.0};
    ++steps_;
    done_ = true;
    StepOutcome out;
    out.obs = Observe(state_, goal_);
    out.done = true;
    out.success = true;
    out.reward = 1.0 + config_.terminal_bonus;
    return out;
  }
  void SetGoal(const GoalState& goal) override {
    goal_ = goal;
    steps_ = 0;
    done_ = false;
  }
  const RobotState& state() const override { return state_; }
  const GoalState& goal() const override { return goal_; }
  const EpisodeConfig& config() const override { return config_; }
  int step_count() const override { return steps_; }
  bool done() const override { return done_; }

 private:
  EpisodeConfig config_;
  Rng rng_;
  RobotState state_;
  GoalState goal_;
  int steps_ = 0;
  bool done_ = false;
};

Action Idle(const Observation&) { return {0.0, 0.0}; }

TEST(Summarize, KnownValues) {
  const std::vector<double> v = {4.0, 1.0, 3.0, 2.0};
  const SummaryStats s = Summarize(v);
  EXPECT_EQ(s.count, 4);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(1.25));
  const std::vector<double> odd = {5.0, 1.0, 2.0};
  EXPECT_EQ(Summarize(odd).median, 2.0);
  EXPECT_EQ(Summarize({}).count, 0);
}

TEST(Evaluate, IdlePolicyRarelySucceeds) {
  EpisodeConfig config;
  config.max_steps = 30;
  UnicycleEnvironment env(config, 5);
  const EvalReport report = Evaluate(Idle, env, 200);
  EXPECT_EQ(report.episodes, 200);
  EXPECT_LT(report.success_rate, 0.05);
  EXPECT_EQ(report.successful.positional.count, report.successes);
  EXPECT_EQ(report.all.positional.count, 200);
}

TEST(Evaluate, TeleportStubAlwaysSucceeds) {
  TeleportEnvironment env(EpisodeConfig{});
  const EvalReport report = Evaluate(Idle, env, 50);
  EXPECT_EQ(report.success_rate, 1.0);
  EXPECT_EQ(report.successes, 50);
  EXPECT_NEAR(report.all.positional.mean, 0.0, 1e-12);
  EXPECT_NEAR(report.all.angular_deg.mean, 0.0, 1e-12);
  EXPECT_NEAR(report.all.velocity.mean, 0.0, 1e-12);
  EXPECT_EQ(report.duration_ratio.count, 50);
  for (const EpisodeRecord& r : report.records) {
    EXPECT_EQ(r.steps, 1);
    ASSERT_TRUE(r.duration_ratio.has_value());
    EXPECT_NEAR(*r.duration_ratio, 0.1 / r.spline_duration, 1e-12);
  }
}

TEST(Evaluate, SuccessRateIsFractionOfSuccesses) {
  EpisodeConfig config;
  config.max_steps = 40;
  UnicycleEnvironment env(config, 9);
  // Goals two steps straight ahead at the start speed are reached by idling.
  std::vector<Task> tasks;
  for (int i = 0; i < 10; ++i) {
    const double nu = 1.0 + 0.2 * i;
    Task t{{0.0, 0.0, 0.0, nu, 0.0}, {2 * nu * 0.1, 0.0, 0.0, nu}};
    if (i % 3 == 0) t.goal.y = 4.0;  // unreachable by idling
    tasks.push_back(t);
  }
  const EvalReport report = Evaluate(Idle, env, tasks);
  EXPECT_EQ(report.successes, 6);
  EXPECT_DOUBLE_EQ(report.success_rate, 0.6);
  EXPECT_EQ(report.duration_ratio.count, 6);
  for (const EpisodeRecord& r : report.records) {
    EXPECT_EQ(r.duration_ratio.has_value(), r.success);
    EXPECT_EQ(r.task.start.nu, tasks[r.episode].start.nu);
  }
}

TEST(Evaluate, AngularErrorsAreReportedInDegrees) {
  EpisodeConfig config;
  config.max_steps = 1;
  UnicycleEnvironment env(config, 9);
  const std::vector<Task> tasks = {
      {{0, 0, 0, 0, 0}, {3.0, 0.0, std::numbers::pi / 2, 0.0}}};
  const EvalReport report = Evaluate(Idle, env, tasks);
  EXPECT_NEAR(report.all.angular_deg.mean, 90.0, 1e-9);
}

TEST(RunScenario, SingleGoalMatchesEpisode) {
  EpisodeConfig config;
  const Task task{{0.0, 0.0, 0.2, 1.0, 0.0}, {2.0, 1.0, 0.5, 1.0}};
  auto policy = [](const Observation& o) {
    return Action{std::tanh(o.d - o.nu), std::tanh(o.theta_polar)};
  };
  UnicycleEnvironment a(config, 1), b(config, 1);
  const ScenarioResult scenario = RunScenario(policy, a, {task.start, {task.goal}});
  const EvalReport episode = Evaluate(policy, b, std::span<const Task>(&task, 1));
  ASSERT_EQ(scenario.legs.size(), 1u);
  EXPECT_EQ(scenario.legs[0].steps, episode.records[0].steps);
  EXPECT_EQ(scenario.legs[0].reached, episode.records[0].success);
  EXPECT_EQ(scenario.legs[0].error, episode.records[0].error);
  EXPECT_EQ(scenario.trace.back().state.x, b.state().x);
  EXPECT_EQ(scenario.trace.back().state.y, b.state().y);
}

TEST(RunScenario, TimestampsAdvanceByDt) {
  EpisodeConfig config;
  config.max_steps = 15;
  UnicycleEnvironment env(config, 1);
  Scenario s{{0, 0, 0, 0, 0},
             {{5, 5, 0, 0}, {-5, 5, 0, 0}, {0, -5, 1, 1}}};
  const ScenarioResult r = RunScenario(Idle, env, s);
  ASSERT_EQ(r.trace.size(), 1u + 3 * 15);
  EXPECT_EQ(r.trace.front().t, 0.0);
  for (size_t k = 1; k < r.trace.size(); ++k) {
    EXPECT_NEAR(r.trace[k].t - r.trace[k - 1].t, 0.1, 1e-12);
    EXPECT_GE(r.trace[k].goal_index, r.trace[k - 1].goal_index);
  }
  EXPECT_FALSE(r.AllReached());
  EXPECT_EQ(r.legs.size(), 3u);
}

TEST(RunScenario, TeleportReachesEveryGoal) {
  TeleportEnvironment env(EpisodeConfig{});
  Scenario s{{0, 0, 0, 0, 0}, {{1, 1, 0, 1}, {2, 0, 1, 0}, {0, 3, 2, 2}}};
  const ScenarioResult r = RunScenario(Idle, env, s);
  EXPECT_TRUE(r.AllReached());
  EXPECT_EQ(r.trace.size(), 4u);
  EXPECT_EQ(r.trace.back().goal_index, 2);
  EXPECT_EQ(r.trace.back().state.y, 3.0);
}

TEST(RunScenario, EmptyScenarioIsRejected) {
  TeleportEnvironment env(EpisodeConfig{});
  EXPECT_THROW(RunScenario(Idle, env, Scenario{}), ContractViolation);
}

TEST(MovingAverage, ConstantSeriesStaysFlat) {
  const std::vector<double> v(100, 3.5);
  for (double x : MovingAverage(v, 50)) EXPECT_DOUBLE_EQ(x, 3.5);
}

TEST(MovingAverage, WindowOneIsIdentity) {
  const std::vector<double> v = {1.0, -2.0, 7.5, 0.25};
  EXPECT_EQ(MovingAverage(v, 1), v);
}

TEST(MovingAverage, TrailingWindowWithPartialStart) {
  const std::vector<double> v = {1, 2, 3, 4, 5};
  const auto m = MovingAverage(v, 3);
  EXPECT_DOUBLE_EQ(m[0], 1.0);
  EXPECT_DOUBLE_EQ(m[1], 1.5);
  EXPECT_DOUBLE_EQ(m[2], 2.0);
  EXPECT_DOUBLE_EQ(m[3], 3.0);
  EXPECT_DOUBLE_EQ(m[4], 4.0);
  EXPECT_THROW(MovingAverage(v, 0), ContractViolation);
}

TEST(NormalizeToPercent, MaximumMapsToHundred) {
  const std::vector<double> v = {2.0, 8.0, 4.0};
  const auto n = NormalizeToPercent(v);
  EXPECT_DOUBLE_EQ(n[0], 25.0);
  EXPECT_DOUBLE_EQ(n[1], 100.0);
  EXPECT_DOUBLE_EQ(n[2], 50.0);
}

TEST(ExtractTrainingCurves, ConvertsAndNormalizes) {
  TrainingLog log;
  for (int i = 0; i < 4; ++i) {
    EpisodeLog e;
    e.episode = i;
    e.final_error = {4.0 - i, std::numbers::pi / (i + 1), 0.5};
    log.push_back(e);
  }
  const TrainingCurves raw = ExtractTrainingCurves(log, 2);
  EXPECT_DOUBLE_EQ(raw.angular_deg[0], 180.0);
  EXPECT_DOUBLE_EQ(raw.positional_smooth[1], 3.5);
  const TrainingCurves pct = ExtractTrainingCurves(log, 2, true);
  EXPECT_DOUBLE_EQ(pct.positional[0], 100.0);
  EXPECT_DOUBLE_EQ(pct.positional[3], 25.0);
  EXPECT_DOUBLE_EQ(pct.positional_smooth[1], 87.5);
  EXPECT_DOUBLE_EQ(pct.velocity[2], 100.0);
}

TEST(FirstDropBelow, FindsFirstCrossing) {
  const std::vector<double> v = {10, 50, 100, 80, 40, 20, 10};
  EXPECT_EQ(FirstDropBelow(v, 0, 0.3), 5);
  EXPECT_EQ(FirstDropBelow(v, 0, 0.2), 6);  // the early 10 precedes the peak
  EXPECT_EQ(FirstDropBelow(v, 3, 0.3), 5);  // peak after 3 is 80
  EXPECT_EQ(FirstDropBelow(v, 0, 0.05), std::nullopt);
  EXPECT_EQ(FirstDropBelow(v, 7, 0.5), std::nullopt);
}

}  // namespace
}  // namespace nhplan
