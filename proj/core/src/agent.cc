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

#include "nhplan/agent.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace nhplan {

void AgentConfig::Validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("agent." + msg); };
  if (!(gamma >= 0.0 && gamma < 1.0)) fail("gamma must be in [0, 1)");
  if (!(tau > 0.0 && tau <= 1.0)) fail("tau must be in (0, 1]");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (!(lr_actor > 0.0)) fail("lr_actor must be > 0");
  if (!(lr_critic > 0.0)) fail("lr_critic must be > 0");
  if (!(eps_explore >= 0.0 && eps_explore <= 1.0)) {
    fail("eps_explore must be in [0, 1]");
  }
  if (!(sigma_explore >= 0.0)) fail("sigma_explore must be >= 0");
  if (warmup_episodes < 0) fail("warmup_episodes must be >= 0");
  if (episodes < 0) fail("episodes must be >= 0");
  if (replay_capacity < 1) fail("replay_capacity must be >= 1");
  if (hidden_units < 1) fail("hidden_units must be >= 1");
}

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw ContractViolation("ReplayBuffer: capacity < 1");
  storage_.reserve(static_cast<size_t>(capacity));
}

void ReplayBuffer::Store(const Transition& transition) {
  if (size() < capacity_) {
    storage_.push_back(transition);
    return;
  }
  storage_[cursor_] = transition;
  cursor_ = (cursor_ + 1) % capacity_;
}

std::vector<Transition> ReplayBuffer::Sample(int n, Rng& rng) const {
  if (storage_.empty() || n < 1) {
    throw ContractViolation("ReplayBuffer::Sample: empty buffer or n < 1");
  }
  std::uniform_int_distribution<int> pick(0, size() - 1);
  std::vector<Transition> batch;
  batch.reserve(n);
  for (int i = 0; i < n; ++i) batch.push_back(storage_[pick(rng)]);
  return batch;
}

const Transition& ReplayBuffer::at(int i) const {
  if (i < 0 || i >= size()) throw ContractViolation("ReplayBuffer::at");
  return storage_[(cursor_ + i) % size()];
}

void ReplayBuffer::Clear() {
  storage_.clear();
  cursor_ = 0;
}

namespace {

using Real = DdpgAgent::Real;
using Matrix = Mlp<Real>::Matrix;
using Vector = Mlp<Real>::Vector;

Matrix ObsMatrix(const std::array<double, kObservationDim>& obs) {
  Matrix m(kObservationDim, 1);
  for (int i = 0; i < kObservationDim; ++i) m(i, 0) = static_cast<Real>(obs[i]);
  return m;
}

struct BatchMatrices {
  Matrix obs;
  Matrix action;
  Matrix next_obs;
};

BatchMatrices Pack(std::span<const Transition> batch) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  BatchMatrices m{Matrix(kObservationDim, n), Matrix(kActionDim, n),
                  Matrix(kObservationDim, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    const Transition& t = batch[j];
    for (int i = 0; i < kObservationDim; ++i) {
      m.obs(i, j) = static_cast<Real>(t.obs[i]);
      m.next_obs(i, j) = static_cast<Real>(t.next_obs[i]);
    }
    m.action(0, j) = static_cast<Real>(t.action.u_lin);
    m.action(1, j) = static_cast<Real>(t.action.u_ang);
  }
  return m;
}

}  // namespace

DdpgAgent::DdpgAgent(AgentConfig config, Rng::result_type seed)
    : config_(config),
      rng_(seed),
      actor_(config.hidden_units),
      critic_(config.hidden_units),
      buffer_(config.replay_capacity) {
  config_.Validate();
  actor_.Initialize(rng_);
  critic_.Initialize(rng_);
  actor_target_ = actor_;
  critic_target_ = critic_;
  actor_adam_ = AdamState<Real>(actor_.mlp().num_parameters(), config_.lr_actor);
  critic_adam_ =
      AdamState<Real>(critic_.mlp().num_parameters(), config_.lr_critic);
}

Action DdpgAgent::GreedyAction(const Observation& obs) const {
  const Matrix out = actor_.Forward(ObsMatrix(obs.ToArray()));
  return {static_cast<double>(out(0, 0)), static_cast<double>(out(1, 0))};
}

ActionChoice DdpgAgent::ChooseAction(const Observation& obs, Mode mode,
                                     Rng& rng) const {
  ActionChoice choice{GreedyAction(obs), false};
  if (mode == Mode::kTest) return choice;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < config_.eps_explore) {
    Action& a = choice.action;
    std::normal_distribution<double> lin(a.u_lin, config_.sigma_explore);
    std::normal_distribution<double> ang(a.u_ang, config_.sigma_explore);
    a.u_lin = lin(rng);
    a.u_ang = ang(rng);
    choice.explored = true;
  }
  choice.action = ClipAction(choice.action);
  return choice;
}

std::vector<double> DdpgAgent::ComputeTargets(
    std::span<const Transition> batch) const {
  const BatchMatrices m = Pack(batch);
  const Matrix next_q =
      critic_target_.Forward(m.next_obs, actor_target_.Forward(m.next_obs));
  std::vector<double> targets(batch.size());
  for (size_t i = 0; i < batch.size(); ++i) {
    const double bootstrap = batch[i].done ? 0.0 : config_.gamma;
    targets[i] = batch[i].reward +
                 bootstrap * static_cast<double>(next_q(0, static_cast<Eigen::Index>(i)));
  }
  return targets;
}

TrainStepStats DdpgAgent::TrainStep(std::span<const Transition> batch) {
  if (batch.empty()) throw ContractViolation("TrainStep: empty batch");
  const auto n = static_cast<Eigen::Index>(batch.size());
  const BatchMatrices m = Pack(batch);
  const std::vector<double> targets = ComputeTargets(batch);
  TrainStepStats stats;

  // Critic: minimize (1/N) sum (y - Q(s, a))^2.
  {
    Critic::Cache cache;
    const Matrix q = critic_.Forward(m.obs, m.action, &cache);
    Matrix d_q(1, n);
    double loss = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double diff = static_cast<double>(q(0, j)) - targets[j];
      loss += diff * diff;
      d_q(0, j) = static_cast<Real>(2.0 * diff / static_cast<double>(n));
    }
    stats.critic_loss = loss / static_cast<double>(n);
    Vector grads;
    critic_.Backward(cache, d_q, &grads, nullptr, nullptr);
    AdamStep<Real>(critic_.mlp().mutable_parameters(), grads, critic_adam_,
                   Objective::kMinimize);
  }

  // Actor: ascend (1/N) sum Q(s, mu(s)) through the updated critic.
  {
    Actor::Cache actor_cache;
    Critic::Cache critic_cache;
    const Matrix mu = actor_.Forward(m.obs, &actor_cache);
    const Matrix q = critic_.Forward(m.obs, mu, &critic_cache);
    stats.mean_q = static_cast<double>(q.mean());
    const Matrix d_q =
        Matrix::Constant(1, n, static_cast<Real>(1.0 / static_cast<double>(n)));
    Matrix d_action;
    critic_.Backward(critic_cache, d_q, nullptr, nullptr, &d_action);
    Vector grads;
    actor_.Backward(actor_cache, d_action, &grads);
    AdamStep<Real>(actor_.mlp().mutable_parameters(), grads, actor_adam_,
                   Objective::kMaximize);
  }

  SoftUpdate(critic_target_.mlp(), critic_.mlp(), config_.tau);
  SoftUpdate(actor_target_.mlp(), actor_.mlp(), config_.tau);
  return stats;
}

TrainingLog Train(DdpgAgent& agent, GoalEnvironment& env,
                  const std::function<void(const EpisodeLog&)>& on_episode) {
  const AgentConfig& config = agent.config();
  TrainingLog log;
  log.reserve(static_cast<size_t>(config.episodes));
  for (int episode = 0; episode < config.episodes; ++episode) {
    const bool learning = agent.episodes_seen() >= config.warmup_episodes;
    Observation obs = env.Reset();
    EpisodeLog entry;
    entry.episode = static_cast<int>(agent.episodes_seen());
    StepOutcome out;
    do {
      const Action action = agent.SelectAction(obs, Mode::kTrain);
      out = env.Step(action);
      agent.buffer().Store({obs.ToArray(), action, out.reward,
                            out.obs.ToArray(), out.success});
      if (learning && agent.buffer().size() >= 1) {
        const auto batch =
            agent.buffer().Sample(config.batch_size, agent.rng());
        agent.TrainStep(batch);
      }
      entry.episode_return += out.reward;
      ++entry.steps;
      obs = out.obs;
    } while (!out.done);
    entry.final_error = out.error_components;
    entry.success = out.success;
    agent.set_episodes_seen(agent.episodes_seen() + 1);
    log.push_back(entry);
    if (on_episode) on_episode(entry);
  }
  return log;
}

}  // namespace nhplan
