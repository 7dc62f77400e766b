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

#include "nhplan/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "nhplan/errors.h"

namespace nhplan {

namespace {

template <typename T>
std::string FormatShortest(T value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::vector<std::string_view> SplitFields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    const size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::string> SplitWhitespace(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string token;
  while (ss >> token) out.push_back(token);
  return out;
}

bool IsSkippable(const std::string& line) {
  const size_t first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

[[noreturn]] void LineError(int line, const std::string& msg) {
  throw IoError("line " + std::to_string(line) + ": " + msg);
}

double NumberAt(const std::vector<std::string>& tokens, size_t i, int line) {
  const auto v = ParseNumber(tokens[i]);
  if (!v || !std::isfinite(*v)) {
    LineError(line, "expected a finite number, got '" + tokens[i] + "'");
  }
  return *v;
}

double NumberAt(const std::vector<std::string_view>& fields, size_t i,
                int line) {
  const auto v = ParseNumber(fields[i]);
  if (!v) {
    LineError(line, "expected a number, got '" + std::string(fields[i]) + "'");
  }
  return *v;
}

void CheckGoal(const GoalState& goal, int line) {
  if (goal.theta <= -std::numbers::pi || goal.theta > std::numbers::pi) {
    LineError(line, "goal heading must lie in (-pi, pi]");
  }
  if (goal.nu < 0.0) LineError(line, "goal speed must be non-negative");
}

template <typename Fn>
auto WithFile(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return fn(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::string FormatNumber(double value) { return FormatShortest(value); }
std::string FormatNumber(float value) { return FormatShortest(value); }

std::optional<double> ParseNumber(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                           text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() ||
      text.empty()) {
    return std::nullopt;
  }
  return value;
}

std::vector<Task> ParseTasks(std::istream& in) {
  std::vector<Task> tasks;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (IsSkippable(line)) continue;
    const auto t = SplitWhitespace(line);
    if (t.size() != 9) LineError(number, "expected 9 numbers per task");
    Task task;
    task.start = {NumberAt(t, 0, number), NumberAt(t, 1, number),
                  NumberAt(t, 2, number), NumberAt(t, 3, number),
                  NumberAt(t, 4, number)};
    task.goal = {NumberAt(t, 5, number), NumberAt(t, 6, number),
                 NumberAt(t, 7, number), NumberAt(t, 8, number)};
    CheckGoal(task.goal, number);
    tasks.push_back(task);
  }
  return tasks;
}

void WriteTasks(std::ostream& out, std::span<const Task> tasks) {
  out << "# start_x start_y start_theta start_nu start_omega "
         "goal_x goal_y goal_theta goal_nu\n";
  for (const Task& t : tasks) {
    out << FormatNumber(t.start.x) << ' ' << FormatNumber(t.start.y) << ' '
        << FormatNumber(t.start.theta) << ' ' << FormatNumber(t.start.nu)
        << ' ' << FormatNumber(t.start.omega) << ' ' << FormatNumber(t.goal.x)
        << ' ' << FormatNumber(t.goal.y) << ' ' << FormatNumber(t.goal.theta)
        << ' ' << FormatNumber(t.goal.nu) << '\n';
  }
}

Scenario ParseScenario(std::istream& in) {
  Scenario scenario;
  bool have_start = false;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (IsSkippable(line)) continue;
    const auto t = SplitWhitespace(line);
    if (t[0] == "start") {
      if (have_start) LineError(number, "duplicate start line");
      if (!scenario.goals.empty()) {
        LineError(number, "start must precede the goals");
      }
      if (t.size() != 6) LineError(number, "start needs x y theta nu omega");
      scenario.initial = {NumberAt(t, 1, number), NumberAt(t, 2, number),
                          NumberAt(t, 3, number), NumberAt(t, 4, number),
                          NumberAt(t, 5, number)};
      have_start = true;
    } else if (t[0] == "goal") {
      if (!have_start) LineError(number, "goal before start line");
      if (t.size() != 5) LineError(number, "goal needs x y theta nu");
      GoalState goal{NumberAt(t, 1, number), NumberAt(t, 2, number),
                     NumberAt(t, 3, number), NumberAt(t, 4, number)};
      CheckGoal(goal, number);
      scenario.goals.push_back(goal);
    } else {
      LineError(number, "unknown record '" + t[0] + "'");
    }
  }
  if (!have_start) throw IoError("scenario: missing start line");
  if (scenario.goals.empty()) throw IoError("scenario: no goal lines");
  return scenario;
}

void WriteScenario(std::ostream& out, const Scenario& s) {
  out << "start " << FormatNumber(s.initial.x) << ' '
      << FormatNumber(s.initial.y) << ' ' << FormatNumber(s.initial.theta)
      << ' ' << FormatNumber(s.initial.nu) << ' '
      << FormatNumber(s.initial.omega) << '\n';
  for (const GoalState& g : s.goals) {
    out << "goal " << FormatNumber(g.x) << ' ' << FormatNumber(g.y) << ' '
        << FormatNumber(g.theta) << ' ' << FormatNumber(g.nu) << '\n';
  }
}

namespace {
constexpr std::string_view kTrajectoryHeader =
    "t,x,y,theta,nu,omega,goal_index";
}  // namespace

void WriteTrajectoryCsv(std::ostream& out, std::span<const TracePoint> trace) {
  out << kTrajectoryHeader << '\n';
  for (const TracePoint& p : trace) {
    out << FormatNumber(p.t) << ',' << FormatNumber(p.state.x) << ','
        << FormatNumber(p.state.y) << ',' << FormatNumber(p.state.theta) << ','
        << FormatNumber(p.state.nu) << ',' << FormatNumber(p.state.omega)
        << ',' << p.goal_index << '\n';
  }
}

void WriteTrajectoryCsv(std::ostream& out, std::span<const Waypoint> waypoints,
                        int goal_index) {
  std::vector<TracePoint> trace;
  trace.reserve(waypoints.size());
  for (const Waypoint& w : waypoints) {
    trace.push_back({w.t, {w.x, w.y, w.theta, w.nu, w.omega}, goal_index});
  }
  WriteTrajectoryCsv(out, trace);
}

std::vector<TracePoint> ReadTrajectoryCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("trajectory: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader) LineError(1, "unexpected trajectory header");
  std::vector<TracePoint> trace;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = SplitFields(line, ',');
    if (f.size() != 7) LineError(number, "expected 7 fields");
    TracePoint p;
    p.t = NumberAt(f, 0, number);
    p.state = {NumberAt(f, 1, number), NumberAt(f, 2, number),
               NumberAt(f, 3, number), NumberAt(f, 4, number),
               NumberAt(f, 5, number)};
    p.goal_index = static_cast<int>(NumberAt(f, 6, number));
    trace.push_back(p);
  }
  return trace;
}

void WriteTrainingLogCsv(std::ostream& out, const TrainingLog& log) {
  out << "episode,steps,return,positional_error,angular_error,velocity_error,"
         "success\n";
  for (const EpisodeLog& e : log) {
    out << e.episode << ',' << e.steps << ',' << FormatNumber(e.episode_return)
        << ',' << FormatNumber(e.final_error.positional) << ','
        << FormatNumber(e.final_error.angular) << ','
        << FormatNumber(e.final_error.velocity) << ',' << (e.success ? 1 : 0)
        << '\n';
  }
}

TrainingLog ReadTrainingLogCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("training log: empty input");
  TrainingLog log;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = SplitFields(line, ',');
    if (f.size() != 7) LineError(number, "expected 7 fields");
    EpisodeLog e;
    e.episode = static_cast<int>(NumberAt(f, 0, number));
    e.steps = static_cast<int>(NumberAt(f, 1, number));
    e.episode_return = NumberAt(f, 2, number);
    e.final_error = {NumberAt(f, 3, number), NumberAt(f, 4, number),
                     NumberAt(f, 5, number)};
    e.success = NumberAt(f, 6, number) != 0.0;
    log.push_back(e);
  }
  return log;
}

void WriteTrainingCurvesCsv(std::ostream& out, const TrainingCurves& c) {
  out << "episode,positional,angular_deg,velocity,positional_smooth,"
         "angular_smooth,velocity_smooth\n";
  for (size_t i = 0; i < c.positional.size(); ++i) {
    out << i << ',' << FormatNumber(c.positional[i]) << ','
        << FormatNumber(c.angular_deg[i]) << ',' << FormatNumber(c.velocity[i])
        << ',' << FormatNumber(c.positional_smooth[i]) << ','
        << FormatNumber(c.angular_smooth[i]) << ','
        << FormatNumber(c.velocity_smooth[i]) << '\n';
  }
}

void WriteReportCsv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "variant,episodes,success_rate,"
         "pos_mean,pos_median,ang_mean_deg,ang_median_deg,vel_mean,vel_median,"
         "succ_pos_mean,succ_pos_median,succ_ang_mean_deg,succ_ang_median_deg,"
         "succ_vel_mean,succ_vel_median,ratio_mean,ratio_std,ratio_count\n";
  for (const EvalReport& r : reports) {
    out << VariantName(r.variant) << ',' << r.episodes << ','
        << FormatNumber(r.success_rate);
    for (const ErrorStats* s : {&r.all, &r.successful}) {
      out << ',' << FormatNumber(s->positional.mean) << ','
          << FormatNumber(s->positional.median) << ','
          << FormatNumber(s->angular_deg.mean) << ','
          << FormatNumber(s->angular_deg.median) << ','
          << FormatNumber(s->velocity.mean) << ','
          << FormatNumber(s->velocity.median);
    }
    out << ',' << FormatNumber(r.duration_ratio.mean) << ','
        << FormatNumber(r.duration_ratio.stddev) << ','
        << r.duration_ratio.count << '\n';
  }
}

void WriteEpisodeCsv(std::ostream& out, const EvalReport& report) {
  out << "episode,success,steps,error,positional_error,angular_error_deg,"
         "velocity_error,spline_duration,duration_ratio\n";
  for (const EpisodeRecord& e : report.records) {
    out << e.episode << ',' << (e.success ? 1 : 0) << ',' << e.steps << ','
        << FormatNumber(e.error) << ',' << FormatNumber(e.final_error.positional)
        << ',' << FormatNumber(e.final_error.angular * 180.0 / std::numbers::pi)
        << ',' << FormatNumber(e.final_error.velocity) << ','
        << FormatNumber(e.spline_duration) << ',';
    if (e.duration_ratio) out << FormatNumber(*e.duration_ratio);
    out << '\n';
  }
}

std::string FormatReportTable(std::span<const EvalReport> reports) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << std::left << std::setw(8) << "variant" << std::right << std::setw(9)
      << "episodes" << std::setw(10) << "success" << std::setw(12)
      << "pos mean" << std::setw(12) << "pos med" << std::setw(12)
      << "ang mean" << std::setw(12) << "ang med" << std::setw(12)
      << "vel mean" << std::setw(12) << "vel med" << std::setw(12)
      << "ratio mean" << std::setw(12) << "ratio std" << '\n';
  for (const EvalReport& r : reports) {
    out << std::left << std::setw(8) << VariantName(r.variant) << std::right
        << std::setw(9) << r.episodes << std::setw(9)
        << 100.0 * r.success_rate << '%' << std::setw(10)
        << r.all.positional.mean << " m" << std::setw(10)
        << r.all.positional.median << " m" << std::setw(8)
        << r.all.angular_deg.mean << " deg" << std::setw(8)
        << r.all.angular_deg.median << " deg" << std::setw(8)
        << r.all.velocity.mean << " m/s" << std::setw(8)
        << r.all.velocity.median << " m/s" << std::setw(12)
        << r.duration_ratio.mean << std::setw(12) << r.duration_ratio.stddev
        << '\n';
  }
  return out.str();
}

std::vector<Task> LoadTasks(const std::filesystem::path& path) {
  return WithFile(path, [](std::istream& in) { return ParseTasks(in); });
}

Scenario LoadScenario(const std::filesystem::path& path) {
  return WithFile(path, [](std::istream& in) { return ParseScenario(in); });
}

}  // namespace nhplan
