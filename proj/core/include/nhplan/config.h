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

#ifndef NHPLAN_CONFIG_H_
#define NHPLAN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "nhplan/agent.h"
#include "nhplan/environment.h"

namespace nhplan {

// Everything a run needs. Serialized as an INI-style file with the sections
// [run], [agent], [episode] and [limits]; keys missing from a file keep
// their defaults, unknown keys are rejected.
struct RunConfig {
  AgentConfig agent;
  EpisodeConfig episode;
  std::uint64_t seed = 1;
  int eval_episodes = 1000;
  std::string out_dir = "out";
  std::string checkpoint;  // empty: <out_dir>/<variant>/checkpoint.txt
  std::string scenario;

  void Validate() const;
};

std::string FormatConfig(const RunConfig& config);
// Throws ConfigError naming the section.key at fault.
RunConfig ParseConfig(std::string_view text);

RunConfig LoadConfig(const std::filesystem::path& path);
void SaveConfig(const std::filesystem::path& path, const RunConfig& config);

}  // namespace nhplan

#endif  // NHPLAN_CONFIG_H_
