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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "nhplan/agent.h"
#include "nhplan/baseline.h"
#include "nhplan/environment.h"
#include "nhplan/kinematics.h"
#include "nhplan/network.h"

namespace nhplan {
namespace {

using Real = DdpgAgent::Real;
using Matrix = Mlp<Real>::Matrix;
using Vector = Mlp<Real>::Vector;

void BM_StepDynamics(benchmark::State& state) {
  const Limits limits;
  RobotState s{0, 0, 0, 1.0, 0.2};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Action a{u(rng), u(rng)};
  for (auto _ : state) {
    s = StepDynamics(s, a, limits);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_StepDynamics);

void BM_EnvironmentStep(benchmark::State& state) {
  UnicycleEnvironment env(EpisodeConfig{}, 1);
  env.Reset();
  const Action a{0.3, -0.2};
  for (auto _ : state) {
    if (env.done()) env.Reset();
    benchmark::DoNotOptimize(env.Step(a));
  }
}
BENCHMARK(BM_EnvironmentStep);

void BM_CriticForward(benchmark::State& state) {
  const auto batch = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(1);
  CriticNet<Real> critic(200);
  critic.Initialize(rng);
  const Matrix obs = Matrix::Random(6, batch), act = Matrix::Random(2, batch);
  for (auto _ : state) benchmark::DoNotOptimize(critic.Forward(obs, act));
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_CriticForward)->Arg(1)->Arg(500);

void BM_CriticBackward(benchmark::State& state) {
  const auto batch = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(1);
  CriticNet<Real> critic(200);
  critic.Initialize(rng);
  const Matrix obs = Matrix::Random(6, batch), act = Matrix::Random(2, batch);
  CriticNet<Real>::Cache cache;
  critic.Forward(obs, act, &cache);
  const Matrix dq = Matrix::Ones(1, batch);
  Vector grads;
  Matrix d_action;
  for (auto _ : state) {
    critic.Backward(cache, dq, &grads, nullptr, &d_action);
    benchmark::DoNotOptimize(grads.data());
  }
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_CriticBackward)->Arg(500);

void BM_ActorGreedyAction(benchmark::State& state) {
  const DdpgAgent agent(AgentConfig{}, 1);
  const Observation obs{2.0, 0.3, 1.0, -0.2, 0.5, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(agent.GreedyAction(obs));
}
BENCHMARK(BM_ActorGreedyAction);

void BM_TrainStep(benchmark::State& state) {
  DdpgAgent agent(AgentConfig{}, 1);
  Rng rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    Transition t;
    for (double& v : t.obs) v = 3 * u(rng);
    for (double& v : t.next_obs) v = 3 * u(rng);
    t.action = {u(rng), u(rng)};
    t.reward = u(rng);
    agent.buffer().Store(t);
  }
  for (auto _ : state) {
    const auto batch = agent.buffer().Sample(agent.config().batch_size, rng);
    benchmark::DoNotOptimize(agent.TrainStep(batch));
  }
}
BENCHMARK(BM_TrainStep)->Unit(benchmark::kMillisecond);

void BM_PlanSpline(benchmark::State& state) {
  const Limits limits;
  const RobotState start{0, 0, 0, 1.0, 0};
  const GoalState goal{3.0, -2.0, 2.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(PlanSpline(start, goal, limits));
}
BENCHMARK(BM_PlanSpline)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace nhplan

BENCHMARK_MAIN();
