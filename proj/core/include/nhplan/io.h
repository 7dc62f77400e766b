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

#ifndef NHPLAN_IO_H_
#define NHPLAN_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nhplan/agent.h"
#include "nhplan/baseline.h"
#include "nhplan/environment.h"
#include "nhplan/evaluation.h"

namespace nhplan {

// Shortest decimal text that parses back to the same value.
std::string FormatNumber(double value);
std::string FormatNumber(float value);
// Whole-token parse; nullopt on trailing garbage or non-numbers.
std::optional<double> ParseNumber(std::string_view text);

// Task files: one task per line,
//   start_x start_y start_theta start_nu start_omega goal_x goal_y
//   goal_theta goal_nu
// Blank lines and lines starting with '#' are ignored.
std::vector<Task> ParseTasks(std::istream& in);
void WriteTasks(std::ostream& out, std::span<const Task> tasks);

// Scenario files: one "start x y theta nu omega" line followed by one or
// more "goal x y theta nu" lines, in visiting order.
Scenario ParseScenario(std::istream& in);
void WriteScenario(std::ostream& out, const Scenario& scenario);

// Trajectory CSV with header t,x,y,theta,nu,omega,goal_index.
void WriteTrajectoryCsv(std::ostream& out, std::span<const TracePoint> trace);
void WriteTrajectoryCsv(std::ostream& out,
                        std::span<const Waypoint> waypoints, int goal_index);
std::vector<TracePoint> ReadTrajectoryCsv(std::istream& in);

// Training log CSV:
// episode,steps,return,positional_error,angular_error,velocity_error,success
void WriteTrainingLogCsv(std::ostream& out, const TrainingLog& log);
TrainingLog ReadTrainingLogCsv(std::istream& in);

// Training curves CSV (raw and smoothed series per episode).
void WriteTrainingCurvesCsv(std::ostream& out, const TrainingCurves& curves);

// One summary row per report.
void WriteReportCsv(std::ostream& out, std::span<const EvalReport> reports);
// Per-episode rows of one report.
void WriteEpisodeCsv(std::ostream& out, const EvalReport& report);
// Fixed-width human-readable summary.
std::string FormatReportTable(std::span<const EvalReport> reports);

// Helpers that open files and raise IoError with the path on failure.
std::vector<Task> LoadTasks(const std::filesystem::path& path);
Scenario LoadScenario(const std::filesystem::path& path);

}  // namespace nhplan

#endif  // NHPLAN_IO_H_
