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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "nhplan/baseline.h"
#include "nhplan/errors.h"

namespace nhplan {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

EpisodeRecord RunEpisode(const Policy& policy, GoalEnvironment& env,
                         std::optional<Task> task) {
  Observation obs = env.Reset(task);
  EpisodeRecord record;
  record.task = {env.state(), env.goal()};
  StepOutcome out;
  do {
    out = env.Step(policy(obs));
    obs = out.obs;
    ++record.steps;
  } while (!out.done);
  record.success = out.success;
  record.error = out.error;
  record.final_error = out.error_components;
  const SplinePlan plan =
      PlanSpline(record.task.start, record.task.goal, env.config().limits);
  record.spline_duration = plan.duration;
  if (record.success) {
    record.duration_ratio =
        DurationRatio(plan, record.steps, env.config().limits.dt);
  }
  return record;
}

ErrorStats CollectErrors(const std::vector<EpisodeRecord>& records,
                         bool successful_only) {
  std::vector<double> pos, ang, vel;
  for (const EpisodeRecord& r : records) {
    if (successful_only && !r.success) continue;
    pos.push_back(r.final_error.positional);
    ang.push_back(r.final_error.angular * kRadToDeg);
    vel.push_back(r.final_error.velocity);
  }
  return {Summarize(pos), Summarize(ang), Summarize(vel)};
}

EvalReport BuildReport(ProblemVariant variant,
                       std::vector<EpisodeRecord> records) {
  EvalReport report;
  report.variant = variant;
  report.episodes = static_cast<int>(records.size());
  std::vector<double> ratios;
  for (const EpisodeRecord& r : records) {
    if (r.success) ++report.successes;
    if (r.duration_ratio) ratios.push_back(*r.duration_ratio);
  }
  report.success_rate =
      report.episodes > 0
          ? static_cast<double>(report.successes) / report.episodes
          : 0.0;
  report.all = CollectErrors(records, false);
  report.successful = CollectErrors(records, true);
  report.duration_ratio = Summarize(ratios);
  report.records = std::move(records);
  return report;
}

}  // namespace

Policy GreedyPolicy(const DdpgAgent& agent) {
  return [&agent](const Observation& obs) { return agent.GreedyAction(obs); };
}

SummaryStats Summarize(std::span<const double> values) {
  SummaryStats s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / s.count;
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / s.count);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 == 1 ? sorted[mid]
                                    : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return s;
}

EvalReport Evaluate(const Policy& policy, GoalEnvironment& env,
                    int n_episodes) {
  std::vector<EpisodeRecord> records;
  records.reserve(static_cast<size_t>(std::max(n_episodes, 0)));
  for (int i = 0; i < n_episodes; ++i) {
    records.push_back(RunEpisode(policy, env, std::nullopt));
    records.back().episode = i;
  }
  return BuildReport(env.config().variant, std::move(records));
}

EvalReport Evaluate(const Policy& policy, GoalEnvironment& env,
                    std::span<const Task> tasks) {
  std::vector<EpisodeRecord> records;
  records.reserve(tasks.size());
  for (size_t i = 0; i < tasks.size(); ++i) {
    records.push_back(RunEpisode(policy, env, tasks[i]));
    records.back().episode = static_cast<int>(i);
  }
  return BuildReport(env.config().variant, std::move(records));
}

EvalReport Evaluate(const DdpgAgent& agent, const EpisodeConfig& config,
                    int n_episodes, Rng& rng) {
  UnicycleEnvironment env(config, rng());
  return Evaluate(GreedyPolicy(agent), env, n_episodes);
}

bool ScenarioResult::AllReached() const {
  return !legs.empty() && std::all_of(legs.begin(), legs.end(),
                                      [](const LegResult& l) { return l.reached; });
}

ScenarioResult RunScenario(const Policy& policy, GoalEnvironment& env,
                           const Scenario& scenario) {
  if (scenario.goals.empty()) {
    throw ContractViolation("RunScenario: scenario has no goals");
  }
  ScenarioResult result;
  const double dt = env.config().limits.dt;
  Observation obs = env.Reset(Task{scenario.initial, scenario.goals.front()});
  int global_step = 0;
  result.trace.push_back({0.0, env.state(), 0});
  for (size_t g = 0; g < scenario.goals.size(); ++g) {
    if (g > 0) {
      env.SetGoal(scenario.goals[g]);
      obs = Observe(env.state(), env.goal());
    }
    LegResult leg;
    leg.goal_index = static_cast<int>(g);
    StepOutcome out;
    do {
      out = env.Step(policy(obs));
      obs = out.obs;
      ++leg.steps;
      ++global_step;
      result.trace.push_back(
          {global_step * dt, env.state(), static_cast<int>(g)});
    } while (!out.done);
    leg.reached = out.success;
    leg.error = out.error;
    leg.final_error = out.error_components;
    result.legs.push_back(leg);
  }
  return result;
}

std::vector<double> MovingAverage(std::span<const double> values, int window) {
  if (window < 1) throw ContractViolation("MovingAverage: window < 1");
  std::vector<double> out(values.size());
  double sum = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    sum += values[i];
    if (i >= static_cast<size_t>(window)) sum -= values[i - window];
    const size_t n = std::min(i + 1, static_cast<size_t>(window));
    out[i] = window == 1 ? values[i] : sum / static_cast<double>(n);
  }
  return out;
}

std::vector<double> NormalizeToPercent(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  if (out.empty()) return out;
  const double peak = *std::max_element(out.begin(), out.end());
  if (peak > 0.0) {
    for (double& v : out) v = 100.0 * v / peak;
  }
  return out;
}

TrainingCurves ExtractTrainingCurves(const TrainingLog& log, int window,
                                     bool normalize) {
  TrainingCurves c;
  for (const EpisodeLog& e : log) {
    c.positional.push_back(e.final_error.positional);
    c.angular_deg.push_back(e.final_error.angular * kRadToDeg);
    c.velocity.push_back(e.final_error.velocity);
  }
  c.positional_smooth = MovingAverage(c.positional, window);
  c.angular_smooth = MovingAverage(c.angular_deg, window);
  c.velocity_smooth = MovingAverage(c.velocity, window);
  if (normalize) {
    auto scale = [](std::vector<double>& raw, std::vector<double>& smooth) {
      if (raw.empty()) return;
      const double peak = *std::max_element(raw.begin(), raw.end());
      if (!(peak > 0.0)) return;
      for (double& v : raw) v = 100.0 * v / peak;
      for (double& v : smooth) v = 100.0 * v / peak;
    };
    scale(c.positional, c.positional_smooth);
    scale(c.angular_deg, c.angular_smooth);
    scale(c.velocity, c.velocity_smooth);
  }
  return c;
}

std::optional<int> FirstDropBelow(std::span<const double> series, int start,
                                  double fraction) {
  if (start < 0 || start >= static_cast<int>(series.size())) {
    return std::nullopt;
  }
  const auto peak_it = std::max_element(series.begin() + start, series.end());
  const double peak = *peak_it;
  for (auto i = static_cast<int>(peak_it - series.begin());
       i < static_cast<int>(series.size()); ++i) {
    if (series[i] < fraction * peak) return i;
  }
  return std::nullopt;
}

}  // namespace nhplan
