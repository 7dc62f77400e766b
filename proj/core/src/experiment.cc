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

#include "nhplan/experiment.h"

namespace nhplan {

TrainingRun TrainVariant(
    const RunConfig& config, ProblemVariant variant,
    const std::function<void(const EpisodeLog&)>& on_episode) {
  config.Validate();
  EpisodeConfig episode = config.episode;
  episode.variant = variant;
  TrainingRun run;
  run.agent = std::make_unique<DdpgAgent>(
      config.agent, DeriveSeed(config.seed, kAgentStream));
  UnicycleEnvironment env(episode, DeriveSeed(config.seed, kTrainEnvStream));
  run.log = Train(*run.agent, env, on_episode);
  return run;
}

EvalReport EvaluateVariant(const DdpgAgent& agent, const RunConfig& config,
                           ProblemVariant variant) {
  EpisodeConfig episode = config.episode;
  episode.variant = variant;
  UnicycleEnvironment env(episode, DeriveSeed(config.seed, kEvalStream));
  return Evaluate(GreedyPolicy(agent), env, config.eval_episodes);
}

}  // namespace nhplan
