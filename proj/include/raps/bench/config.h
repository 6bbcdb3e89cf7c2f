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

#ifndef RAPS_BENCH_CONFIG_H_
#define RAPS_BENCH_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "raps/pamdp/environment.h"
#include "raps/primitives/library.h"
#include "raps/rl/trainer.h"

namespace raps::bench {

// One experiment: a task, an action interface and a list of seeds trained
// under a shared budget. The JSON schema is documented in docs/config.md.
struct ExperimentConfig {
  std::string task;  // built-in name; ignored when task_spec is set
  nlohmann::json task_spec;  // optional inline task (tasks::TaskFromJson)
  pamdp::ActionMode mode = pamdp::ActionMode::kRaps;
  std::vector<std::string> primitives;  // empty = whole default library
  bool no_dummy = false;
  bool yaw_enabled = false;
  sim::ObservationMode observation = sim::ObservationMode::kState;
  std::vector<std::uint64_t> seeds;
  rl::Budget budget;
  std::int64_t eval_interval = 200;
  int eval_episodes = 5;
  rl::PpoConfig ppo;
  std::string output_dir = "runs/default";
  int workers = 1;

  // throws ConfigError
  void Validate() const;

  sim::TaskSpec ResolveTask() const;
  primitives::PrimitiveLibrary ResolveLibrary() const;
  // the trainer setup for one seed, without the streaming callback
  rl::TrainSetup MakeSetup(std::uint64_t seed) const;
};

// Parses and validates. Unknown keys are rejected so typos surface early.
ExperimentConfig ConfigFromJson(const nlohmann::json& j);
// Canonical form: every field present, keys sorted; output_dir and workers
// are left out since they do not change results.
nlohmann::json ConfigToJson(const ExperimentConfig& config);

// reads the file, then applies RAPS_OUTPUT_DIR and RAPS_WORKERS
ExperimentConfig LoadConfig(const std::string& path);
void ApplyEnvironmentOverrides(ExperimentConfig& config);

// FNV-1a over the canonical JSON dump, as 16 hex digits
std::string ConfigHash(const ExperimentConfig& config);

}  // namespace raps::bench

#endif  // RAPS_BENCH_CONFIG_H_
