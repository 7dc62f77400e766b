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

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "nhplan/errors.h"

namespace nhplan {
namespace {

using Vector = Mlp<DdpgAgent::Real>::Vector;
using Matrix = Mlp<DdpgAgent::Real>::Matrix;

Transition Tagged(int id) {
  Transition t;
  t.reward = id;
  t.obs[0] = id;
  return t;
}

AgentConfig SmallConfig() {
  AgentConfig c;
  c.hidden_units = 16;
  c.batch_size = 32;
  c.episodes = 4;
  c.warmup_episodes = 2;
  c.replay_capacity = 2000;
  return c;
}

EpisodeConfig ShortEpisodes() {
  EpisodeConfig c;
  c.max_steps = 20;
  c.variant = ProblemVariant::k2D;
  return c;
}

TEST(ReplayBuffer, KeepsNewestInInsertionOrder) {
  ReplayBuffer buffer(3);
  for (int i = 0; i < 5; ++i) buffer.Store(Tagged(i));
  ASSERT_EQ(buffer.size(), 3);
  EXPECT_EQ(buffer.at(0).reward, 2);
  EXPECT_EQ(buffer.at(1).reward, 3);
  EXPECT_EQ(buffer.at(2).reward, 4);
  EXPECT_THROW(buffer.at(3), ContractViolation);
}

TEST(ReplayBuffer, NeverExceedsCapacity) {
  ReplayBuffer buffer(7);
  for (int i = 0; i < 100; ++i) {
    buffer.Store(Tagged(i));
    EXPECT_EQ(buffer.size(), std::min(i + 1, 7));
  }
  buffer.Clear();
  EXPECT_EQ(buffer.size(), 0);
}

TEST(ReplayBuffer, SamplingIsUniform) {
  ReplayBuffer buffer(10);
  for (int i = 0; i < 10; ++i) buffer.Store(Tagged(i));
  Rng rng(17);
  const int n = 100000;
  std::vector<int> counts(10, 0);
  for (const Transition& t : buffer.Sample(n, rng)) {
    ++counts[static_cast<int>(t.reward)];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - n / 10.0) * (c - n / 10.0) / (n / 10.0);
  EXPECT_LT(chi2, 27.88);  // 9 dof, p = 0.001
}

TEST(ReplayBuffer, SameSeedSameBatch) {
  ReplayBuffer buffer(50);
  for (int i = 0; i < 50; ++i) buffer.Store(Tagged(i));
  Rng a(4), b(4);
  const auto x = buffer.Sample(20, a), y = buffer.Sample(20, b);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(x[i].reward, y[i].reward);
}

TEST(ReplayBuffer, SingleEntryIsAlwaysReturned) {
  ReplayBuffer buffer(5);
  buffer.Store(Tagged(42));
  Rng rng(1);
  for (const Transition& t : buffer.Sample(10, rng)) EXPECT_EQ(t.reward, 42);
}

TEST(ReplayBuffer, EmptyOrInvalidRequestsThrow) {
  ReplayBuffer buffer(5);
  Rng rng(1);
  EXPECT_THROW(buffer.Sample(1, rng), ContractViolation);
  buffer.Store(Tagged(0));
  EXPECT_THROW(buffer.Sample(0, rng), ContractViolation);
  EXPECT_THROW(ReplayBuffer(0), ContractViolation);
}

TEST(SoftUpdate, TauOneCopies) {
  Mlp<double>::Vector target = Mlp<double>::Vector::Random(20);
  const Mlp<double>::Vector source = Mlp<double>::Vector::Random(20);
  SoftUpdate<double>(target, source, 1.0);
  EXPECT_EQ(target, source);
}

TEST(SoftUpdate, SingleBlend) {
  Mlp<double>::Vector target(2), source(2);
  target << 1.0, -2.0;
  source << 3.0, 4.0;
  SoftUpdate<double>(target, source, 0.1);
  EXPECT_NEAR(target[0], 1.2, 1e-15);
  EXPECT_NEAR(target[1], -1.4, 1e-15);
}

TEST(SoftUpdate, ConvergesGeometrically) {
  const double tau = 0.1;
  Mlp<double>::Vector target(3), source(3);
  target << 5.0, -1.0, 0.25;
  source << 1.0, 2.0, -3.0;
  const Mlp<double>::Vector start = target;
  for (int k = 1; k <= 50; ++k) {
    SoftUpdate<double>(target, source, tau);
    const Mlp<double>::Vector expected =
        source + std::pow(1.0 - tau, k) * (start - source);
    EXPECT_LT((target - expected).cwiseAbs().maxCoeff(), 1e-12) << k;
  }
}

TEST(SoftUpdate, RejectsMismatchedNetworks) {
  ActorNet<double> a(4), b(5);
  EXPECT_THROW(SoftUpdate(a.mlp(), b.mlp(), 0.1), ContractViolation);
}

TEST(AgentConfig, ValidateNamesTheField) {
  AgentConfig c;
  c.tau = 0.0;
  try {
    c.Validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("agent.tau"), std::string::npos);
  }
  c = AgentConfig();
  c.gamma = 1.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = AgentConfig();
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_NO_THROW(AgentConfig().Validate());
}

TEST(DdpgAgent, TargetsStartAsCopies) {
  const DdpgAgent agent(SmallConfig(), 3);
  EXPECT_EQ(agent.actor().mlp().parameters(),
            agent.actor_target().mlp().parameters());
  EXPECT_EQ(agent.critic().mlp().parameters(),
            agent.critic_target().mlp().parameters());
}

// Makes Q'(s, a) = c for every input: all weights zero, output bias c.
void MakeConstantCritic(DdpgAgent::Critic& critic, float c) {
  critic.mlp().mutable_parameters().setZero();
  const int last = static_cast<int>(critic.mlp().layers().size()) - 1;
  critic.mlp().mutable_bias(last)[0] = c;
}

TEST(ComputeTargets, ConstantTargetCritic) {
  DdpgAgent agent(SmallConfig(), 3);
  MakeConstantCritic(agent.mutable_critic_target(), 2.0f);
  std::vector<Transition> batch(3);
  batch[0].reward = 0.5;
  batch[1].reward = -1.0;
  batch[2].reward = 100.5;
  batch[2].done = true;
  for (Transition& t : batch) t.next_obs = {1.0, 0.3, -0.2, 0.1, 2.0, -1.0};
  const auto y = agent.ComputeTargets(batch);
  EXPECT_NEAR(y[0], 0.5 + 0.95 * 2.0, 1e-6);
  EXPECT_NEAR(y[1], -1.0 + 0.95 * 2.0, 1e-6);
  EXPECT_EQ(y[2], 100.5);
}

TEST(ComputeTargets, ZeroDiscountGivesReward) {
  AgentConfig c = SmallConfig();
  c.gamma = 0.0;
  const DdpgAgent agent(c, 5);
  std::vector<Transition> batch = {Tagged(3), Tagged(7)};
  batch[1].next_obs = {2.0, 1.0, 0.0, 0.5, -1.0, 0.0};
  const auto y = agent.ComputeTargets(batch);
  EXPECT_EQ(y[0], 3.0);
  EXPECT_EQ(y[1], 7.0);
}

TEST(ComputeTargets, UsesTargetNetworksOnly) {
  DdpgAgent agent(SmallConfig(), 3);
  Transition t;
  t.reward = 1.0;
  t.next_obs = {1.0, 0.3, -0.2, 0.1, 2.0, -1.0};
  const double before = agent.ComputeTargets({&t, 1})[0];
  agent.mutable_critic().mlp().mutable_parameters().setZero();
  agent.mutable_actor().mlp().mutable_parameters().setZero();
  EXPECT_EQ(agent.ComputeTargets({&t, 1})[0], before);

  // Oracle from the public networks.
  Matrix s(6, 1);
  for (int i = 0; i < 6; ++i) s(i, 0) = static_cast<float>(t.next_obs[i]);
  const Matrix a = agent.actor_target().Forward(s);
  const double q = agent.critic_target().Forward(s, a)(0, 0);
  EXPECT_NEAR(before, 1.0 + 0.95 * q, 1e-6);
}

std::vector<Transition> RandomBatch(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Transition> batch(n);
  for (Transition& t : batch) {
    for (int i = 0; i < kObservationDim; ++i) {
      t.obs[i] = 3 * u(rng);
      t.next_obs[i] = 3 * u(rng);
    }
    t.action = {u(rng), u(rng)};
    t.reward = u(rng);
  }
  return batch;
}

TEST(TrainStep, CriticLossDecreasesOnFixedBatch) {
  AgentConfig c = SmallConfig();
  c.gamma = 0.0;
  c.lr_critic = 1e-3;
  DdpgAgent agent(c, 11);
  Rng rng(2);
  const auto batch = RandomBatch(64, rng);
  const double first = agent.TrainStep(batch).critic_loss;
  double last = first;
  int increases = 0;
  for (int i = 0; i < 100; ++i) {
    const double loss = agent.TrainStep(batch).critic_loss;
    if (loss > last) ++increases;
    last = loss;
  }
  EXPECT_LT(last, 0.5 * first);
  EXPECT_LE(increases, 5);
}

TEST(TrainStep, ActorClimbsCriticWhenCriticIsFrozen) {
  AgentConfig c = SmallConfig();
  c.lr_critic = 1e-20;
  c.lr_actor = 1e-4;
  DdpgAgent agent(c, 13);
  Rng rng(3);
  const auto batch = RandomBatch(64, rng);
  Matrix s(6, 64);
  for (int j = 0; j < 64; ++j) {
    for (int i = 0; i < 6; ++i) s(i, j) = static_cast<float>(batch[j].obs[i]);
  }
  auto mean_q = [&] {
    return agent.critic().Forward(s, agent.actor().Forward(s)).mean();
  };
  const float before = mean_q();
  for (int i = 0; i < 5; ++i) agent.TrainStep(batch);
  EXPECT_GT(mean_q(), before);
}

TEST(TrainStep, TargetsTrailLiveNetworks) {
  DdpgAgent agent(SmallConfig(), 21);
  Rng rng(4);
  const auto batch = RandomBatch(32, rng);
  const Vector target_before = agent.actor_target().mlp().parameters();
  agent.TrainStep(batch);
  const Vector& live = agent.actor().mlp().parameters();
  const Vector expected = 0.1f * live + 0.9f * target_before;
  EXPECT_LT((agent.actor_target().mlp().parameters() - expected)
                .cwiseAbs()
                .maxCoeff(),
            1e-6f);
  EXPECT_NE(agent.actor_target().mlp().parameters(), live);
}

TEST(TrainStep, RejectsEmptyBatch) {
  DdpgAgent agent(SmallConfig(), 1);
  EXPECT_THROW(agent.TrainStep({}), ContractViolation);
}

Observation SomeObservation() {
  return {2.0, 0.4, 1.0, -0.3, 0.5, 0.1};
}

TEST(SelectAction, TestModeIsGreedy) {
  const DdpgAgent agent(SmallConfig(), 8);
  Rng rng(1);
  const Action greedy = agent.GreedyAction(SomeObservation());
  for (int i = 0; i < 100; ++i) {
    const Action a = agent.SelectAction(SomeObservation(), Mode::kTest, rng);
    EXPECT_EQ(a.u_lin, greedy.u_lin);
    EXPECT_EQ(a.u_ang, greedy.u_ang);
  }
}

TEST(SelectAction, ZeroEpsilonEqualsTestMode) {
  AgentConfig c = SmallConfig();
  c.eps_explore = 0.0;
  const DdpgAgent agent(c, 8);
  Rng rng(1);
  const Action greedy = agent.GreedyAction(SomeObservation());
  for (int i = 0; i < 100; ++i) {
    const Action a = agent.SelectAction(SomeObservation(), Mode::kTrain, rng);
    EXPECT_EQ(a.u_lin, greedy.u_lin);
    EXPECT_EQ(a.u_ang, greedy.u_ang);
  }
}

TEST(SelectAction, ExplorationRate) {
  const DdpgAgent agent(SmallConfig(), 8);
  Rng rng(9);
  const int n = 10000;
  int explored = 0;
  for (int i = 0; i < n; ++i) {
    const ActionChoice c = agent.ChooseAction(SomeObservation(), Mode::kTrain, rng);
    explored += c.explored ? 1 : 0;
    EXPECT_LE(std::abs(c.action.u_lin), 1.0);
    EXPECT_LE(std::abs(c.action.u_ang), 1.0);
  }
  EXPECT_NEAR(explored / static_cast<double>(n), 0.5, 0.02);
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

TEST(SelectAction, ClipSaturationMatchesNormalTail) {
  AgentConfig c = SmallConfig();
  c.eps_explore = 1.0;
  const DdpgAgent agent(c, 8);
  const Action greedy = agent.GreedyAction(SomeObservation());
  Rng rng(10);
  const int n = 20000;
  int upper = 0, lower = 0;
  for (int i = 0; i < n; ++i) {
    const Action a = agent.SelectAction(SomeObservation(), Mode::kTrain, rng);
    upper += a.u_lin == 1.0 ? 1 : 0;
    lower += a.u_lin == -1.0 ? 1 : 0;
  }
  EXPECT_NEAR(upper / static_cast<double>(n),
              1.0 - NormalCdf((1.0 - greedy.u_lin) / 3.0), 0.015);
  EXPECT_NEAR(lower / static_cast<double>(n),
              NormalCdf((-1.0 - greedy.u_lin) / 3.0), 0.015);
}

TEST(Train, WarmupOnlyFillsBuffer) {
  AgentConfig c = SmallConfig();
  c.episodes = 3;
  c.warmup_episodes = 3;
  DdpgAgent agent(c, 2);
  const Vector actor = agent.actor().mlp().parameters();
  const Vector critic = agent.critic().mlp().parameters();
  UnicycleEnvironment env(ShortEpisodes(), 3);
  const TrainingLog log = Train(agent, env);
  ASSERT_EQ(log.size(), 3u);
  int steps = 0;
  for (const EpisodeLog& e : log) steps += e.steps;
  EXPECT_EQ(agent.buffer().size(), steps);
  ASSERT_EQ(agent.actor().mlp().parameters().size(), actor.size());
  EXPECT_EQ(std::memcmp(agent.actor().mlp().parameters().data(), actor.data(),
                        sizeof(float) * actor.size()),
            0);
  EXPECT_EQ(std::memcmp(agent.critic().mlp().parameters().data(),
                        critic.data(), sizeof(float) * critic.size()),
            0);
  EXPECT_EQ(agent.episodes_seen(), 3);
}

TEST(Train, LearningChangesParametersAfterWarmup) {
  DdpgAgent agent(SmallConfig(), 2);
  const Vector actor = agent.actor().mlp().parameters();
  UnicycleEnvironment env(ShortEpisodes(), 3);
  const TrainingLog log = Train(agent, env);
  EXPECT_EQ(log.size(), 4u);
  EXPECT_NE(agent.actor().mlp().parameters(), actor);
  for (size_t i = 0; i < log.size(); ++i) {
    EXPECT_EQ(log[i].episode, static_cast<int>(i));
    EXPECT_GE(log[i].steps, 1);
    EXPECT_LE(log[i].steps, 20);
  }
}

TEST(Train, TimeoutsAreNotTerminalTransitions) {
  AgentConfig c = SmallConfig();
  c.episodes = 2;
  c.warmup_episodes = 2;
  DdpgAgent agent(c, 2);
  UnicycleEnvironment env(ShortEpisodes(), 3);
  const TrainingLog log = Train(agent, env);
  int index = 0;
  for (const EpisodeLog& e : log) {
    index += e.steps;
    const Transition& last = agent.buffer().at(index - 1);
    EXPECT_EQ(last.done, e.success);
  }
  for (int i = 0; i < agent.buffer().size(); ++i) {
    const Transition& t = agent.buffer().at(i);
    EXPECT_EQ(t.done, t.reward > 100.0);
  }
}

TEST(Train, SameSeedsReproduceExactly) {
  auto run = [] {
    DdpgAgent agent(SmallConfig(), 77);
    UnicycleEnvironment env(ShortEpisodes(), 78);
    TrainingLog log = Train(agent, env);
    return std::make_pair(log, agent.actor().mlp().parameters());
  };
  const auto [log_a, params_a] = run();
  const auto [log_b, params_b] = run();
  ASSERT_EQ(log_a.size(), log_b.size());
  for (size_t i = 0; i < log_a.size(); ++i) {
    EXPECT_EQ(log_a[i].steps, log_b[i].steps);
    EXPECT_EQ(log_a[i].episode_return, log_b[i].episode_return);
    EXPECT_EQ(log_a[i].final_error.positional, log_b[i].final_error.positional);
  }
  EXPECT_EQ(params_a, params_b);
}

TEST(Train, CallbackSeesEveryEpisode) {
  DdpgAgent agent(SmallConfig(), 5);
  UnicycleEnvironment env(ShortEpisodes(), 6);
  int calls = 0;
  Train(agent, env, [&](const EpisodeLog& e) { EXPECT_EQ(e.episode, calls++); });
  EXPECT_EQ(calls, 4);
}

}  // namespace
}  // namespace nhplan
