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

#ifndef NHPLAN_CHECKPOINT_H_
#define NHPLAN_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "nhplan/agent.h"
#include "nhplan/network.h"

namespace nhplan {

// Text container, versioned by its first line ("nhplan-checkpoint 1").
// Networks are stored with their input size, side-input wiring, per-layer
// shapes and activations, then all parameters in shortest round-trip
// decimal form, so a load reproduces every bit.
inline constexpr int kCheckpointVersion = 1;

template <typename T>
void WriteNetwork(std::ostream& out, std::string_view name, const Mlp<T>& net);
// Throws IoError on malformed input or a name mismatch.
template <typename T>
Mlp<T> ReadNetwork(std::istream& in, std::string_view expected_name);

template <typename T>
void WriteAdam(std::ostream& out, std::string_view name,
               const AdamState<T>& state);
template <typename T>
AdamState<T> ReadAdam(std::istream& in, std::string_view expected_name);

struct CheckpointInfo {
  ProblemVariant variant = ProblemVariant::k4D;
  std::int64_t episodes_seen = 0;
  int hidden_units = 0;
};

// Actor, critic, both targets and both optimizer states. The replay buffer
// is not stored.
void WriteCheckpoint(std::ostream& out, const DdpgAgent& agent,
                     ProblemVariant variant);
// Reads the header only.
CheckpointInfo ReadCheckpointInfo(std::istream& in);
// Loads into `agent`, whose hidden size must match the stored networks.
CheckpointInfo ReadCheckpoint(std::istream& in, DdpgAgent& agent);

void SaveCheckpoint(const std::filesystem::path& path, const DdpgAgent& agent,
                    ProblemVariant variant);
CheckpointInfo LoadCheckpoint(const std::filesystem::path& path,
                              DdpgAgent& agent);
CheckpointInfo PeekCheckpoint(const std::filesystem::path& path);

}  // namespace nhplan

#endif  // NHPLAN_CHECKPOINT_H_
