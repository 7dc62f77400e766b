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

#ifndef NHPLAN_EXPERIMENT_H_
#define NHPLAN_EXPERIMENT_H_

#include <functional>
#include <memory>

#include "nhplan/agent.h"
#include "nhplan/config.h"
#include "nhplan/evaluation.h"

namespace nhplan {

// Seed streams derived from RunConfig::seed.
enum SeedStream : std::uint64_t {
  kAgentStream = 1,
  kTrainEnvStream = 2,
  kEvalStream = 3,
};

struct TrainingRun {
  std::unique_ptr<DdpgAgent> agent;
  TrainingLog log;
};

// Fresh agent trained on `variant` with the agent/episode settings and seed
// of `config`; fully reproducible from (config, variant).
TrainingRun TrainVariant(
    const RunConfig& config, ProblemVariant variant,
    const std::function<void(const EpisodeLog&)>& on_episode = nullptr);

// Greedy evaluation on config.eval_episodes sampled tasks, reproducible from
// (config.seed, variant).
EvalReport EvaluateVariant(const DdpgAgent& agent, const RunConfig& config,
                           ProblemVariant variant);

}  // namespace nhplan

#endif  // NHPLAN_EXPERIMENT_H_
