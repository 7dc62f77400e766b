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

// nhplan: train, evaluate and replay DDPG motion planners for a unicycle.
//
//   nhplan train    [--config F] [--seed N] [--variant V|all] [--episodes N]
//                   [--out-dir D] [--checkpoint F]
//   nhplan eval     --checkpoint F [--episodes N] [--tasks F] ...
//   nhplan scenario --checkpoint F --scenario F ...
//   nhplan config   (prints the default configuration)

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "nhplan/baseline.h"
#include "nhplan/checkpoint.h"
#include "nhplan/config.h"
#include "nhplan/errors.h"
#include "nhplan/evaluation.h"
#include "nhplan/experiment.h"
#include "nhplan/io.h"

namespace {

namespace fs = std::filesystem;
using namespace nhplan;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfigFailure = 2,
  kIoFailure = 3,
  kContractFailure = 4,
};

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string variant;
  std::optional<int> episodes;
  std::string out_dir;
  std::string checkpoint;
};

void AddCommon(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "INI configuration file");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--variant", o.variant, "2d, 3da, 3db or 4d");
  cmd->add_option("--out-dir", o.out_dir, "Output directory");
  cmd->add_option("--checkpoint", o.checkpoint, "Checkpoint file");
}

RunConfig ResolveConfig(const CommonOptions& o) {
  RunConfig config = o.config_path.empty() ? RunConfig{} : LoadConfig(o.config_path);
  if (o.seed) config.seed = *o.seed;
  if (!o.variant.empty() && o.variant != "all") {
    config.episode.variant = ParseVariant(o.variant);
  }
  if (!o.out_dir.empty()) config.out_dir = o.out_dir;
  if (!o.checkpoint.empty()) config.checkpoint = o.checkpoint;
  return config;
}

fs::path VariantDir(const RunConfig& config, ProblemVariant variant) {
  return fs::path(config.out_dir) / std::string(VariantName(variant));
}

fs::path CheckpointPath(const RunConfig& config, ProblemVariant variant) {
  if (!config.checkpoint.empty()) return config.checkpoint;
  return VariantDir(config, variant) / "checkpoint.txt";
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

int RunTrain(const CommonOptions& o) {
  RunConfig config = ResolveConfig(o);
  if (o.episodes) config.agent.episodes = *o.episodes;
  config.Validate();

  std::vector<ProblemVariant> variants;
  if (o.variant == "all") {
    variants = {ProblemVariant::k2D, ProblemVariant::k3Da,
                ProblemVariant::k3Db, ProblemVariant::k4D};
    if (!config.checkpoint.empty()) {
      throw ConfigError("--checkpoint cannot be combined with --variant all");
    }
  } else {
    variants = {config.episode.variant};
  }
  for (ProblemVariant v : variants) EnsureDir(VariantDir(config, v));

  std::mutex print_mutex;
  auto train_one = [&](ProblemVariant variant) {
    const auto on_episode = [&](const EpisodeLog& e) {
      if ((e.episode + 1) % 50 != 0) return;
      std::lock_guard lock(print_mutex);
      std::fprintf(stderr, "[%s] episode %d steps %d success %d pos %.3f\n",
                   std::string(VariantName(variant)).c_str(), e.episode + 1,
                   e.steps, e.success ? 1 : 0, e.final_error.positional);
    };
    TrainingRun run = TrainVariant(config, variant, on_episode);
    const fs::path dir = VariantDir(config, variant);
    SaveCheckpoint(CheckpointPath(config, variant), *run.agent, variant);
    auto log_out = OpenOut(dir / "training_log.csv");
    WriteTrainingLogCsv(log_out, run.log);
    auto curves_out = OpenOut(dir / "training_curves.csv");
    WriteTrainingCurvesCsv(curves_out, ExtractTrainingCurves(run.log));
    RunConfig used = config;
    used.episode.variant = variant;
    SaveConfig(dir / "config.ini", used);
  };

  if (variants.size() == 1) {
    train_one(variants.front());
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(variants.size());
    for (size_t i = 0; i < variants.size(); ++i) {
      workers.emplace_back([&, i] {
        try {
          train_one(variants[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::cout << "trained " << variants.size() << " agent(s) into "
            << config.out_dir << "\n";
  return kOk;
}

// Builds an agent matching the checkpoint and checks the variant.
std::unique_ptr<DdpgAgent> LoadAgent(RunConfig& config, bool variant_given) {
  if (!variant_given && config.checkpoint.empty()) {
    // Pick the only trained variant under out_dir.
    std::vector<ProblemVariant> found;
    for (auto v : {ProblemVariant::k2D, ProblemVariant::k3Da,
                   ProblemVariant::k3Db, ProblemVariant::k4D}) {
      if (fs::exists(CheckpointPath(config, v))) found.push_back(v);
    }
    if (found.size() > 1) {
      throw ConfigError("several checkpoints under " + config.out_dir +
                        "; pass --variant or --checkpoint");
    }
    if (found.size() == 1) config.episode.variant = found.front();
  }
  const fs::path path = CheckpointPath(config, config.episode.variant);
  if (!fs::exists(path)) throw IoError("checkpoint not found: " + path.string());
  const CheckpointInfo info = PeekCheckpoint(path);
  if (!variant_given) {
    config.episode.variant = info.variant;
  } else if (info.variant != config.episode.variant) {
    throw ConfigError("variant mismatch: checkpoint was trained on " +
                      std::string(VariantName(info.variant)) +
                      ", requested " +
                      std::string(VariantName(config.episode.variant)));
  }
  config.agent.hidden_units = info.hidden_units;
  auto agent = std::make_unique<DdpgAgent>(config.agent, config.seed);
  LoadCheckpoint(path, *agent);
  return agent;
}

int RunEval(const CommonOptions& o, const std::string& tasks_path) {
  RunConfig config = ResolveConfig(o);
  if (o.episodes) config.eval_episodes = *o.episodes;
  config.Validate();
  auto agent = LoadAgent(config, !o.variant.empty());
  const ProblemVariant variant = config.episode.variant;

  EvalReport report;
  if (!tasks_path.empty()) {
    const std::vector<Task> tasks = LoadTasks(tasks_path);
    UnicycleEnvironment env(config.episode,
                            DeriveSeed(config.seed, kEvalStream));
    report = Evaluate(GreedyPolicy(*agent), env, tasks);
  } else {
    report = EvaluateVariant(*agent, config, variant);
  }

  const fs::path dir = VariantDir(config, variant);
  EnsureDir(dir);
  const std::vector<EvalReport> reports{report};
  auto csv = OpenOut(dir / "eval_report.csv");
  WriteReportCsv(csv, reports);
  auto episodes = OpenOut(dir / "eval_episodes.csv");
  WriteEpisodeCsv(episodes, report);
  const std::string table = FormatReportTable(reports);
  auto txt = OpenOut(dir / "eval_report.txt");
  txt << table;
  std::cout << table;
  return kOk;
}

int RunScenarioCommand(const CommonOptions& o, std::string scenario_path) {
  RunConfig config = ResolveConfig(o);
  config.Validate();
  if (scenario_path.empty()) scenario_path = config.scenario;
  if (scenario_path.empty()) throw ConfigError("run.scenario: no scenario file");
  const Scenario scenario = LoadScenario(scenario_path);
  auto agent = LoadAgent(config, !o.variant.empty());

  UnicycleEnvironment env(config.episode, DeriveSeed(config.seed, kEvalStream));
  const ScenarioResult result = RunScenario(GreedyPolicy(*agent), env, scenario);

  // Spline reference, leg by leg from one goal state to the next.
  std::vector<TracePoint> spline_trace;
  RobotState from = scenario.initial;
  double t0 = 0.0;
  for (size_t g = 0; g < scenario.goals.size(); ++g) {
    const GoalState& goal = scenario.goals[g];
    const SplinePlan plan = PlanSpline(from, goal, config.episode.limits);
    for (const Waypoint& w : plan.waypoints) {
      spline_trace.push_back({t0 + w.t, {w.x, w.y, w.theta, w.nu, w.omega},
                              static_cast<int>(g)});
    }
    t0 += plan.duration;
    from = {goal.x, goal.y, goal.theta, goal.nu, 0.0};
  }

  const fs::path dir = VariantDir(config, config.episode.variant);
  EnsureDir(dir);
  auto trace_out = OpenOut(dir / "scenario_trace.csv");
  WriteTrajectoryCsv(trace_out, result.trace);
  auto spline_out = OpenOut(dir / "scenario_spline.csv");
  WriteTrajectoryCsv(spline_out, spline_trace);

  for (const LegResult& leg : result.legs) {
    std::cout << "goal " << leg.goal_index << ": "
              << (leg.reached ? "reached" : "missed") << " after " << leg.steps
              << " steps, error " << leg.error << "\n";
  }
  std::cout << "trace written to " << (dir / "scenario_trace.csv").string()
            << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DDPG motion planning for a kinodynamically constrained unicycle"};
  app.require_subcommand(1);

  CommonOptions train_opts;
  auto* train = app.add_subcommand("train", "Train agent(s) and write checkpoints");
  AddCommon(train, train_opts);
  train->add_option("--episodes", train_opts.episodes, "Training episodes");

  CommonOptions eval_opts;
  std::string tasks_path;
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint greedily");
  AddCommon(eval, eval_opts);
  eval->add_option("--episodes", eval_opts.episodes, "Test episodes");
  eval->add_option("--tasks", tasks_path, "Task file with explicit tasks");

  CommonOptions scenario_opts;
  std::string scenario_path;
  auto* scenario = app.add_subcommand("scenario", "Run a multi-goal scenario");
  AddCommon(scenario, scenario_opts);
  scenario->add_option("--scenario", scenario_path, "Scenario file");

  auto* config = app.add_subcommand("config", "Print the default configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*train) return RunTrain(train_opts);
    if (*eval) return RunEval(eval_opts, tasks_path);
    if (*scenario) return RunScenarioCommand(scenario_opts, scenario_path);
    if (*config) {
      std::cout << FormatConfig(RunConfig{});
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kContractFailure;
  }
  return kUsage;
}
