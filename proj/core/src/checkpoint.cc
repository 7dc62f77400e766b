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

#include "nhplan/checkpoint.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "nhplan/errors.h"
#include "nhplan/io.h"

namespace nhplan {

namespace {

constexpr std::string_view kMagic = "nhplan-checkpoint";

std::string NextToken(std::istream& in, std::string_view what) {
  std::string token;
  if (!(in >> token)) {
    throw IoError("checkpoint: unexpected end of input while reading " +
                  std::string(what));
  }
  return token;
}

void Expect(std::istream& in, std::string_view keyword) {
  const std::string token = NextToken(in, keyword);
  if (token != keyword) {
    throw IoError("checkpoint: expected '" + std::string(keyword) +
                  "', got '" + token + "'");
  }
}

template <typename T>
T ReadValue(std::istream& in, std::string_view what) {
  const std::string token = NextToken(in, what);
  T value{};
  const auto res =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw IoError("checkpoint: bad value '" + token + "' for " +
                  std::string(what));
  }
  return value;
}

template <typename T>
constexpr std::string_view ScalarName() {
  return sizeof(T) == sizeof(float) ? "float32" : "float64";
}

template <typename V>
void WriteVector(std::ostream& out, const V& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out << ' ';
    out << FormatNumber(v[i]);
  }
  out << '\n';
}

template <typename V>
void ReadVector(std::istream& in, V& v, std::string_view what) {
  using T = typename V::Scalar;
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = ReadValue<T>(in, what);
}

}  // namespace

template <typename T>
void WriteNetwork(std::ostream& out, std::string_view name, const Mlp<T>& net) {
  out << "network " << name << ' ' << ScalarName<T>() << '\n';
  out << "input " << net.input_dim() << " side " << net.side_layer() << ' '
      << net.side_dim() << '\n';
  out << "layers " << net.layers().size() << '\n';
  for (const LayerShape& l : net.layers()) {
    out << l.in << ' ' << l.out << ' ' << ActivationName(l.activation) << '\n';
  }
  out << "params " << net.num_parameters() << '\n';
  WriteVector(out, net.parameters());
}

template <typename T>
Mlp<T> ReadNetwork(std::istream& in, std::string_view expected_name) {
  Expect(in, "network");
  const std::string name = NextToken(in, "network name");
  if (name != expected_name) {
    throw IoError("checkpoint: expected network '" +
                  std::string(expected_name) + "', got '" + name + "'");
  }
  const std::string scalar = NextToken(in, "scalar type");
  if (scalar != ScalarName<T>()) {
    throw IoError("checkpoint: network '" + name + "' stores " + scalar);
  }
  Expect(in, "input");
  const int input_dim = ReadValue<int>(in, "input size");
  Expect(in, "side");
  const int side_layer = ReadValue<int>(in, "side layer");
  const int side_dim = ReadValue<int>(in, "side size");
  Expect(in, "layers");
  const int count = ReadValue<int>(in, "layer count");
  if (count < 1 || count > 1024) throw IoError("checkpoint: bad layer count");
  std::vector<std::pair<int, Activation>> layers;
  std::vector<int> stored_in;
  for (int l = 0; l < count; ++l) {
    stored_in.push_back(ReadValue<int>(in, "layer input"));
    const int out = ReadValue<int>(in, "layer output");
    layers.emplace_back(out, ParseActivation(NextToken(in, "activation")));
  }
  Mlp<T> net;
  try {
    net = Mlp<T>(input_dim, layers, side_layer, side_dim);
  } catch (const ContractViolation& e) {
    throw IoError(std::string("checkpoint: ") + e.what());
  }
  for (int l = 0; l < count; ++l) {
    if (net.layers()[l].in != stored_in[l]) {
      throw IoError("checkpoint: inconsistent layer shapes in '" + name + "'");
    }
  }
  Expect(in, "params");
  if (ReadValue<Eigen::Index>(in, "parameter count") != net.num_parameters()) {
    throw IoError("checkpoint: parameter count mismatch in '" + name + "'");
  }
  typename Mlp<T>::Vector params(net.num_parameters());
  ReadVector(in, params, "parameter");
  net.set_parameters(params);
  return net;
}

template <typename T>
void WriteAdam(std::ostream& out, std::string_view name,
               const AdamState<T>& s) {
  out << "adam " << name << ' ' << ScalarName<T>() << " t " << s.t << " lr "
      << FormatNumber(s.lr) << " beta1 " << FormatNumber(s.beta1) << " beta2 "
      << FormatNumber(s.beta2) << " epsilon " << FormatNumber(s.epsilon)
      << " size " << s.first_moment.size() << '\n';
  WriteVector(out, s.first_moment);
  WriteVector(out, s.second_moment);
}

template <typename T>
AdamState<T> ReadAdam(std::istream& in, std::string_view expected_name) {
  Expect(in, "adam");
  const std::string name = NextToken(in, "optimizer name");
  if (name != expected_name) {
    throw IoError("checkpoint: expected optimizer '" +
                  std::string(expected_name) + "', got '" + name + "'");
  }
  if (NextToken(in, "scalar type") != ScalarName<T>()) {
    throw IoError("checkpoint: optimizer scalar type mismatch");
  }
  AdamState<T> s;
  Expect(in, "t");
  s.t = ReadValue<std::int64_t>(in, "t");
  Expect(in, "lr");
  s.lr = ReadValue<double>(in, "lr");
  Expect(in, "beta1");
  s.beta1 = ReadValue<double>(in, "beta1");
  Expect(in, "beta2");
  s.beta2 = ReadValue<double>(in, "beta2");
  Expect(in, "epsilon");
  s.epsilon = ReadValue<double>(in, "epsilon");
  Expect(in, "size");
  const auto n = ReadValue<Eigen::Index>(in, "size");
  if (n < 0) throw IoError("checkpoint: negative optimizer size");
  s.first_moment.resize(n);
  s.second_moment.resize(n);
  ReadVector(in, s.first_moment, "first moment");
  ReadVector(in, s.second_moment, "second moment");
  return s;
}

void WriteCheckpoint(std::ostream& out, const DdpgAgent& agent,
                     ProblemVariant variant) {
  out << kMagic << ' ' << kCheckpointVersion << '\n';
  out << "variant " << VariantName(variant) << '\n';
  out << "episodes_seen " << agent.episodes_seen() << '\n';
  out << "hidden_units " << agent.config().hidden_units << '\n';
  WriteNetwork(out, "actor", agent.actor().mlp());
  WriteNetwork(out, "critic", agent.critic().mlp());
  WriteNetwork(out, "actor_target", agent.actor_target().mlp());
  WriteNetwork(out, "critic_target", agent.critic_target().mlp());
  WriteAdam(out, "actor", agent.actor_optimizer());
  WriteAdam(out, "critic", agent.critic_optimizer());
  out << "end\n";
  if (!out) throw IoError("checkpoint: write failed");
}

CheckpointInfo ReadCheckpointInfo(std::istream& in) {
  Expect(in, kMagic);
  const int version = ReadValue<int>(in, "version");
  if (version != kCheckpointVersion) {
    throw IoError("checkpoint: unsupported version " + std::to_string(version));
  }
  CheckpointInfo info;
  Expect(in, "variant");
  try {
    info.variant = ParseVariant(NextToken(in, "variant"));
  } catch (const ConfigError& e) {
    throw IoError(std::string("checkpoint: ") + e.what());
  }
  Expect(in, "episodes_seen");
  info.episodes_seen = ReadValue<std::int64_t>(in, "episodes_seen");
  Expect(in, "hidden_units");
  info.hidden_units = ReadValue<int>(in, "hidden_units");
  return info;
}

CheckpointInfo ReadCheckpoint(std::istream& in, DdpgAgent& agent) {
  using Real = DdpgAgent::Real;
  const CheckpointInfo info = ReadCheckpointInfo(in);
  if (info.hidden_units != agent.config().hidden_units) {
    throw IoError("checkpoint: stored hidden_units " +
                  std::to_string(info.hidden_units) + " but agent uses " +
                  std::to_string(agent.config().hidden_units));
  }
  auto load = [&in](auto& net, std::string_view name) {
    Mlp<Real> stored = ReadNetwork<Real>(in, name);
    if (!stored.SameArchitecture(net.mlp())) {
      throw IoError("checkpoint: architecture mismatch for '" +
                    std::string(name) + "'");
    }
    net.mlp() = std::move(stored);
  };
  load(agent.mutable_actor(), "actor");
  load(agent.mutable_critic(), "critic");
  load(agent.mutable_actor_target(), "actor_target");
  load(agent.mutable_critic_target(), "critic_target");
  auto actor_adam = ReadAdam<Real>(in, "actor");
  auto critic_adam = ReadAdam<Real>(in, "critic");
  if (actor_adam.first_moment.size() != agent.actor().mlp().num_parameters() ||
      critic_adam.first_moment.size() !=
          agent.critic().mlp().num_parameters()) {
    throw IoError("checkpoint: optimizer state size mismatch");
  }
  Expect(in, "end");
  agent.actor_optimizer() = std::move(actor_adam);
  agent.critic_optimizer() = std::move(critic_adam);
  agent.set_episodes_seen(info.episodes_seen);
  return info;
}

void SaveCheckpoint(const std::filesystem::path& path, const DdpgAgent& agent,
                    ProblemVariant variant) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  WriteCheckpoint(out, agent, variant);
}

CheckpointInfo LoadCheckpoint(const std::filesystem::path& path,
                              DdpgAgent& agent) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  try {
    return ReadCheckpoint(in, agent);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

CheckpointInfo PeekCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  return ReadCheckpointInfo(in);
}

template void WriteNetwork<float>(std::ostream&, std::string_view,
                                  const Mlp<float>&);
template void WriteNetwork<double>(std::ostream&, std::string_view,
                                   const Mlp<double>&);
template Mlp<float> ReadNetwork<float>(std::istream&, std::string_view);
template Mlp<double> ReadNetwork<double>(std::istream&, std::string_view);
template void WriteAdam<float>(std::ostream&, std::string_view,
                               const AdamState<float>&);
template void WriteAdam<double>(std::ostream&, std::string_view,
                                const AdamState<double>&);
template AdamState<float> ReadAdam<float>(std::istream&, std::string_view);
template AdamState<double> ReadAdam<double>(std::istream&, std::string_view);

}  // namespace nhplan
