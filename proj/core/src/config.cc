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

#include "nhplan/config.h"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nhplan/errors.h"
#include "nhplan/io.h"

namespace nhplan {

namespace {

namespace pt = boost::property_tree;

// Binds "section.key" names to RunConfig fields in file order.
struct Field {
  std::string section;
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

double ToDouble(const std::string& name, const std::string& text) {
  const auto v = ParseNumber(text);
  if (!v) throw ConfigError(name + ": expected a number, got '" + text + "'");
  return *v;
}

long long ToInteger(const std::string& name, const std::string& text) {
  const double v = ToDouble(name, text);
  if (v != static_cast<double>(static_cast<long long>(v))) {
    throw ConfigError(name + ": expected an integer, got '" + text + "'");
  }
  return static_cast<long long>(v);
}

template <typename Getter, typename Setter>
Field Custom(std::string section, std::string key, Getter get, Setter set) {
  return {std::move(section), std::move(key), get, set};
}

// Member pointers through nested structs.
#define NHPLAN_FIELD(section, key, expr)                                   \
  Custom(                                                                  \
      section, key,                                                        \
      [](const auto& c) {                                                  \
        using V = std::remove_cvref_t<decltype(c.expr)>;                   \
        if constexpr (std::is_floating_point_v<V>) {                       \
          return FormatNumber(c.expr);                                     \
        } else {                                                           \
          return std::to_string(c.expr);                                   \
        }                                                                  \
      },                                                                   \
      [](auto& c, const std::string& text) {                               \
        using V = std::remove_cvref_t<decltype(c.expr)>;                   \
        const std::string name = std::string(section) + "." + key;         \
        if constexpr (std::is_floating_point_v<V>) {                       \
          c.expr = ToDouble(name, text);                                   \
        } else {                                                           \
          const long long v = ToInteger(name, text);                       \
          if (v < 0 && std::is_unsigned_v<V>) {                            \
            throw ConfigError(name + ": must be non-negative");            \
          }                                                                \
          c.expr = static_cast<V>(v);                                      \
        }                                                                  \
      })

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      NHPLAN_FIELD("run", "seed", seed),
      Custom(
          "run", "variant",
          [](const RunConfig& c) {
            return std::string(VariantName(c.episode.variant));
          },
          [](RunConfig& c, const std::string& text) {
            try {
              c.episode.variant = ParseVariant(text);
            } catch (const ConfigError& e) {
              throw ConfigError(std::string("run.") + e.what());
            }
          }),
      NHPLAN_FIELD("run", "eval_episodes", eval_episodes),
      Custom(
          "run", "out_dir", [](const RunConfig& c) { return c.out_dir; },
          [](RunConfig& c, const std::string& t) { c.out_dir = t; }),
      Custom(
          "run", "checkpoint", [](const RunConfig& c) { return c.checkpoint; },
          [](RunConfig& c, const std::string& t) { c.checkpoint = t; }),
      Custom(
          "run", "scenario", [](const RunConfig& c) { return c.scenario; },
          [](RunConfig& c, const std::string& t) { c.scenario = t; }),
      NHPLAN_FIELD("agent", "gamma", agent.gamma),
      NHPLAN_FIELD("agent", "tau", agent.tau),
      NHPLAN_FIELD("agent", "batch_size", agent.batch_size),
      NHPLAN_FIELD("agent", "lr_actor", agent.lr_actor),
      NHPLAN_FIELD("agent", "lr_critic", agent.lr_critic),
      NHPLAN_FIELD("agent", "eps_explore", agent.eps_explore),
      NHPLAN_FIELD("agent", "sigma_explore", agent.sigma_explore),
      NHPLAN_FIELD("agent", "warmup_episodes", agent.warmup_episodes),
      NHPLAN_FIELD("agent", "episodes", agent.episodes),
      NHPLAN_FIELD("agent", "replay_capacity", agent.replay_capacity),
      NHPLAN_FIELD("agent", "hidden_units", agent.hidden_units),
      NHPLAN_FIELD("episode", "eps_success", episode.eps_success),
      NHPLAN_FIELD("episode", "max_steps", episode.max_steps),
      NHPLAN_FIELD("episode", "terminal_bonus", episode.terminal_bonus),
      NHPLAN_FIELD("limits", "a_max_linear", episode.limits.a_max_linear),
      NHPLAN_FIELD("limits", "a_max_angular", episode.limits.a_max_angular),
      NHPLAN_FIELD("limits", "a_max_lateral", episode.limits.a_max_lateral),
      NHPLAN_FIELD("limits", "nu_max", episode.limits.nu_max),
      NHPLAN_FIELD("limits", "omega_max", episode.limits.omega_max),
      NHPLAN_FIELD("limits", "dt", episode.limits.dt),
  };
  return fields;
}

#undef NHPLAN_FIELD

}  // namespace

void RunConfig::Validate() const {
  agent.Validate();
  episode.Validate();
  if (eval_episodes < 1) throw ConfigError("run.eval_episodes must be >= 1");
}

std::string FormatConfig(const RunConfig& config) {
  pt::ptree tree;
  for (const Field& f : Fields()) {
    tree.put(pt::ptree::path_type(f.section + "/" + f.key, '/'),
             f.get(config));
  }
  std::ostringstream out;
  pt::write_ini(out, tree);
  return out.str();
}

RunConfig ParseConfig(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " +
                      e.message());
  }
  std::map<std::string, const Field*> by_name;
  for (const Field& f : Fields()) by_name[f.section + "." + f.key] = &f;

  RunConfig config;
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty()) {
      throw ConfigError("config: key '" + section + "' outside any section");
    }
    for (const auto& [key, value] : entries) {
      const std::string name = section + "." + key;
      const auto it = by_name.find(name);
      if (it == by_name.end()) {
        throw ConfigError("config: unknown key '" + name + "'");
      }
      it->second->set(config, value.data());
    }
  }
  config.Validate();
  return config;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return ParseConfig(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void SaveConfig(const std::filesystem::path& path, const RunConfig& config) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config " + path.string());
  out << FormatConfig(config);
}

}  // namespace nhplan
