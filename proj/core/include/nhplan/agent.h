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

#ifndef NHPLAN_AGENT_H_
#define NHPLAN_AGENT_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nhplan/environment.h"
#include "nhplan/errors.h"
#include "nhplan/network.h"

namespace nhplan {

// Defaults are the grid-search winners used for all four problem variants.
struct AgentConfig {
  double gamma = 0.95;
  double tau = 0.1;
  int batch_size = 500;
  double lr_actor = 1e-2;
  double lr_critic = 1e-4;
  double eps_explore = 0.5;
  double sigma_explore = 3.0;
  int warmup_episodes = 250;
  int episodes = 4000;
  int replay_capacity = 50000;
  int hidden_units = 200;

  void Validate() const;
};

struct Transition {
  std::array<double, kObservationDim> obs{};
  Action action;
  double reward = 0.0;
  std::array<double, kObservationDim> next_obs{};
  bool done = false;  // true only for terminal (goal reached) transitions
};

// Fixed-capacity FIFO ring of transitions.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void Store(const Transition& transition);
  // `n` uniform draws with replacement. Requires size() >= 1 and n >= 1.
  std::vector<Transition> Sample(int n, Rng& rng) const;

  // i = 0 is the oldest stored transition.
  const Transition& at(int i) const;
  int size() const { return static_cast<int>(storage_.size()); }
  int capacity() const { return capacity_; }
  void Clear();

 private:
  int capacity_;
  int cursor_ = 0;  // next slot to overwrite once full
  std::vector<Transition> storage_;
};

// target <- tau * source + (1 - tau) * target.
template <typename T>
void SoftUpdate(typename Mlp<T>::Vector& target,
                const typename Mlp<T>::Vector& source, double tau) {
  if (target.size() != source.size()) {
    throw ContractViolation("SoftUpdate: shape mismatch");
  }
  const T t = static_cast<T>(tau);
  target = t * source + (T(1) - t) * target;
}

template <typename T>
void SoftUpdate(Mlp<T>& target, const Mlp<T>& source, double tau) {
  if (!target.SameArchitecture(source)) {
    throw ContractViolation("SoftUpdate: architecture mismatch");
  }
  SoftUpdate<T>(target.mutable_parameters(), source.parameters(), tau);
}

enum class Mode { kTrain, kTest };

struct ActionChoice {
  Action action;
  bool explored = false;  // the exploration coin replaced the greedy action
};

struct TrainStepStats {
  double critic_loss = 0.0;  // mean squared Bellman error before the update
  double mean_q = 0.0;       // mean Q(s, mu(s)) seen by the actor update
};

// Deep deterministic policy gradient agent with target networks and replay.
class DdpgAgent {
 public:
  using Real = float;
  using Actor = ActorNet<Real>;
  using Critic = CriticNet<Real>;

  DdpgAgent(AgentConfig config, Rng::result_type seed);

  // Deterministic actor output.
  Action GreedyAction(const Observation& obs) const;
  // Test mode is greedy. Train mode replaces the greedy action, with
  // probability eps_explore, by a draw from N(greedy, sigma_explore) per
  // component; the result is clipped to [-1, 1].
  Action SelectAction(const Observation& obs, Mode mode, Rng& rng) const {
    return ChooseAction(obs, mode, rng).action;
  }
  ActionChoice ChooseAction(const Observation& obs, Mode mode, Rng& rng) const;
  Action SelectAction(const Observation& obs, Mode mode) {
    return SelectAction(obs, mode, rng_);
  }

  // y_i = r_i + gamma * (1 - done_i) * Q'(s'_i, mu'(s'_i)).
  std::vector<double> ComputeTargets(std::span<const Transition> batch) const;

  // One critic step on the Bellman error, one actor step along dQ/da, then
  // both targets are blended towards the live networks.
  TrainStepStats TrainStep(std::span<const Transition> batch);

  const AgentConfig& config() const { return config_; }
  const Actor& actor() const { return actor_; }
  const Critic& critic() const { return critic_; }
  const Actor& actor_target() const { return actor_target_; }
  const Critic& critic_target() const { return critic_target_; }
  Actor& mutable_actor() { return actor_; }
  Critic& mutable_critic() { return critic_; }
  Actor& mutable_actor_target() { return actor_target_; }
  Critic& mutable_critic_target() { return critic_target_; }
  AdamState<Real>& actor_optimizer() { return actor_adam_; }
  AdamState<Real>& critic_optimizer() { return critic_adam_; }
  const AdamState<Real>& actor_optimizer() const { return actor_adam_; }
  const AdamState<Real>& critic_optimizer() const { return critic_adam_; }
  ReplayBuffer& buffer() { return buffer_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  Rng& rng() { return rng_; }

  // Episodes already experienced (warm-up included); persists in checkpoints.
  std::int64_t episodes_seen() const { return episodes_seen_; }
  void set_episodes_seen(std::int64_t n) { episodes_seen_ = n; }

 private:
  AgentConfig config_;
  Rng rng_;
  Actor actor_;
  Critic critic_;
  Actor actor_target_;
  Critic critic_target_;
  AdamState<Real> actor_adam_;
  AdamState<Real> critic_adam_;
  ReplayBuffer buffer_;
  std::int64_t episodes_seen_ = 0;
};

struct EpisodeLog {
  int episode = 0;
  int steps = 0;
  double episode_return = 0.0;
  ErrorComponents final_error;
  bool success = false;
};

using TrainingLog = std::vector<EpisodeLog>;

// Runs config.episodes episodes. While fewer than warmup_episodes have been
// seen, transitions only fill the replay buffer; afterwards every
// environment step is followed by one TrainStep on a fresh batch.
TrainingLog Train(DdpgAgent& agent, GoalEnvironment& env,
                  const std::function<void(const EpisodeLog&)>& on_episode =
                      nullptr);

}  // namespace nhplan

#endif  // NHPLAN_AGENT_H_
