// Copyright 2026 The RAPS Toolkit Authors
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

#include "raps/bench/config.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

#include "raps/errors.h"
#include "raps/tasks/catalog.h"

namespace raps::bench {

using nlohmann::json;

namespace {

const char* ObservationName(sim::ObservationMode mode) {
  return mode == sim::ObservationMode::kState ? "state" : "state+grid";
}

sim::ObservationMode ParseObservation(const std::string& name) {
  if (name == "state") return sim::ObservationMode::kState;
  if (name == "state+grid") return sim::ObservationMode::kStateGrid;
  throw ConfigError("unknown observation mode '" + name + "'");
}

void RejectUnknownKeys(const json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

json PpoToJson(const rl::PpoConfig& p) {
  return {{"clip", p.clip},
          {"entropy_coef", p.entropy_coef},
          {"value_coef", p.value_coef},
          {"learning_rate", p.learning_rate},
          {"minibatches_per_epoch", p.minibatches_per_epoch},
          {"gae_lambda", p.gae_lambda},
          {"gamma", p.gamma},
          {"max_grad_norm", p.max_grad_norm},
          {"num_envs", p.num_envs},
          {"epochs", p.epochs},
          {"rollout_steps_raps", p.rollout_steps_raps},
          {"rollout_steps_raw", p.rollout_steps_raw},
          {"adam_epsilon", p.adam_epsilon},
          {"hidden", p.hidden}};
}

void ReadPpo(const json& j, rl::PpoConfig& p) {
  const json defaults = PpoToJson(rl::PpoConfig());
  std::set<std::string> keys;
  for (auto it = defaults.begin(); it != defaults.end(); ++it) {
    keys.insert(it.key());
  }
  RejectUnknownKeys(j, keys, "ppo");
  p.clip = j.value("clip", p.clip);
  p.entropy_coef = j.value("entropy_coef", p.entropy_coef);
  p.value_coef = j.value("value_coef", p.value_coef);
  p.learning_rate = j.value("learning_rate", p.learning_rate);
  p.minibatches_per_epoch =
      j.value("minibatches_per_epoch", p.minibatches_per_epoch);
  p.gae_lambda = j.value("gae_lambda", p.gae_lambda);
  p.gamma = j.value("gamma", p.gamma);
  p.max_grad_norm = j.value("max_grad_norm", p.max_grad_norm);
  p.num_envs = j.value("num_envs", p.num_envs);
  p.epochs = j.value("epochs", p.epochs);
  p.rollout_steps_raps = j.value("rollout_steps_raps", p.rollout_steps_raps);
  p.rollout_steps_raw = j.value("rollout_steps_raw", p.rollout_steps_raw);
  p.adam_epsilon = j.value("adam_epsilon", p.adam_epsilon);
  p.hidden = j.value("hidden", p.hidden);
}

json BudgetToJson(const rl::Budget& b) {
  json j = json::object();
  if (b.max_training_steps) j["max_training_steps"] = *b.max_training_steps;
  if (b.max_wall_clock_s) j["max_wall_clock_s"] = *b.max_wall_clock_s;
  if (b.max_low_level_steps) j["max_low_level_steps"] = *b.max_low_level_steps;
  return j;
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (seeds.empty()) throw ConfigError("seeds must be non-empty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() !=
      seeds.size()) {
    throw ConfigError("seeds must be distinct");
  }
  if (budget.Empty()) {
    throw ConfigError("budget needs at least one bound");
  }
  if ((budget.max_training_steps && *budget.max_training_steps <= 0) ||
      (budget.max_wall_clock_s && !(*budget.max_wall_clock_s > 0.0)) ||
      (budget.max_low_level_steps && *budget.max_low_level_steps <= 0)) {
    throw ConfigError("budget bounds must be positive");
  }
  if (eval_interval <= 0) throw ConfigError("eval_interval must be positive");
  if (eval_episodes <= 0) throw ConfigError("eval_episodes must be positive");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (output_dir.empty()) throw ConfigError("output_dir is empty");
  ppo.Validate();
  ResolveTask();
  ResolveLibrary();
}

sim::TaskSpec ExperimentConfig::ResolveTask() const {
  if (!task_spec.is_null()) return tasks::TaskFromJson(task_spec);
  return tasks::BuiltinCatalog().Get(task);
}

primitives::PrimitiveLibrary ExperimentConfig::ResolveLibrary() const {
  primitives::PrimitiveLibrary library = primitives::DefaultLibrary(
      yaw_enabled ? primitives::DofMode::kPositionYaw
                  : primitives::DofMode::kPositionOnly);
  if (!primitives.empty()) library = library.Subset(primitives);
  if (no_dummy && library.Contains(primitives::kDummyPrimitive)) {
    library = library.Without(primitives::kDummyPrimitive);
  }
  return library;
}

rl::TrainSetup ExperimentConfig::MakeSetup(std::uint64_t seed) const {
  rl::TrainSetup setup;
  setup.task = ResolveTask();
  setup.library = ResolveLibrary();
  setup.mode = mode;
  setup.observation = observation;
  setup.ppo = ppo;
  setup.seed = seed;
  setup.budget = budget;
  setup.eval_interval = eval_interval;
  setup.eval_episodes = eval_episodes;
  return setup;
}

ExperimentConfig ConfigFromJson(const json& j) {
  ExperimentConfig config;
  try {
    RejectUnknownKeys(j,
                      {"task", "mode", "primitives", "ablations", "observation",
                       "seeds", "budget", "eval_interval", "eval_episodes",
                       "ppo", "output_dir", "workers"},
                      "experiment config");
    if (!j.contains("task")) throw ConfigError("missing key 'task'");
    if (j["task"].is_string()) {
      config.task = j["task"].get<std::string>();
    } else {
      config.task_spec = j["task"];
      config.task = j["task"].at("name").get<std::string>();
    }
    config.mode = pamdp::ParseActionMode(j.value("mode", std::string("raps")));
    config.primitives =
        j.value("primitives", std::vector<std::string>{});
    if (j.contains("ablations")) {
      const json& a = j["ablations"];
      RejectUnknownKeys(a, {"no_dummy", "yaw_enabled"}, "ablations");
      config.no_dummy = a.value("no_dummy", false);
      config.yaw_enabled = a.value("yaw_enabled", false);
    }
    config.observation =
        ParseObservation(j.value("observation", std::string("state")));
    config.seeds = j.value("seeds", std::vector<std::uint64_t>{});
    if (j.contains("budget")) {
      const json& b = j["budget"];
      RejectUnknownKeys(
          b, {"max_training_steps", "max_wall_clock_s", "max_low_level_steps"},
          "budget");
      if (b.contains("max_training_steps")) {
        config.budget.max_training_steps =
            b["max_training_steps"].get<std::int64_t>();
      }
      if (b.contains("max_wall_clock_s")) {
        config.budget.max_wall_clock_s = b["max_wall_clock_s"].get<double>();
      }
      if (b.contains("max_low_level_steps")) {
        config.budget.max_low_level_steps =
            b["max_low_level_steps"].get<std::int64_t>();
      }
    }
    config.eval_interval = j.value("eval_interval", config.eval_interval);
    config.eval_episodes = j.value("eval_episodes", config.eval_episodes);
    if (j.contains("ppo")) ReadPpo(j["ppo"], config.ppo);
    config.output_dir = j.value("output_dir", config.output_dir);
    config.workers = j.value("workers", config.workers);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  }
  config.Validate();
  return config;
}

json ConfigToJson(const ExperimentConfig& config) {
  json j;
  j["task"] = config.task_spec.is_null() ? json(config.task) : config.task_spec;
  j["mode"] = pamdp::ActionModeName(config.mode);
  j["primitives"] = config.ResolveLibrary().Names();
  j["ablations"] = {{"no_dummy", config.no_dummy},
                    {"yaw_enabled", config.yaw_enabled}};
  j["observation"] = ObservationName(config.observation);
  j["seeds"] = config.seeds;
  j["budget"] = BudgetToJson(config.budget);
  j["eval_interval"] = config.eval_interval;
  j["eval_episodes"] = config.eval_episodes;
  j["ppo"] = PpoToJson(config.ppo);
  return j;
}

void ApplyEnvironmentOverrides(ExperimentConfig& config) {
  if (const char* dir = std::getenv("RAPS_OUTPUT_DIR"); dir && *dir) {
    config.output_dir = dir;
  }
  if (const char* workers = std::getenv("RAPS_WORKERS"); workers && *workers) {
    try {
      std::size_t used = 0;
      config.workers = std::stoi(workers, &used);
      if (used != std::string(workers).size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ConfigError(std::string("RAPS_WORKERS is not an integer: ") +
                        workers);
    }
    if (config.workers < 1) throw ConfigError("RAPS_WORKERS must be >= 1");
  }
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  ExperimentConfig config = ConfigFromJson(j);
  ApplyEnvironmentOverrides(config);
  return config;
}

std::string ConfigHash(const ExperimentConfig& config) {
  const std::string text = ConfigToJson(config).dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace raps::bench
