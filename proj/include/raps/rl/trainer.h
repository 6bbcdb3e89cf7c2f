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

#ifndef RAPS_RL_TRAINER_H_
#define RAPS_RL_TRAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "raps/pamdp/environment.h"
#include "raps/rl/policy.h"
#include "raps/rl/ppo.h"

namespace raps::rl {

// Training stops when any set bound is reached.
struct Budget {
  std::optional<std::int64_t> max_training_steps;  // gradient updates
  std::optional<double> max_wall_clock_s;
  std::optional<std::int64_t> max_low_level_steps;

  bool Empty() const {
    return !max_training_steps && !max_wall_clock_s && !max_low_level_steps;
  }
};

struct TrainedPolicy {
  ActorCritic model;
  ObservationNormalizer normalizer;
  pamdp::ActionMode mode = pamdp::ActionMode::kRaps;
};

// Runs one episode step for `policy` on `env`: samples (or takes the
// deterministic action) and dispatches through the hybrid or raw interface.
// Raw-mode policy outputs are scaled by sim::RawActionLimits().
struct ActResult {
  PolicySample sample;
  pamdp::StepOutput step;
};
ActResult Act(const TrainedPolicy& policy, pamdp::Environment& env,
              const Eigen::VectorXd& observation, std::mt19937_64* rng);

struct EvalSummary {
  int episodes = 0;
  double success_rate = 0.0;  // fraction of episodes that succeeded
  double mean_return = 0.0;
  std::int64_t high_level_steps = 0;
  bool early_termination = false;  // some episode ended before its horizon
  std::vector<std::int64_t> primitive_counts;  // RAPS only, library order
  std::vector<int> unique_per_episode;         // RAPS only
  double MeanUniquePrimitives() const;
};

// deterministic policy (argmax primitive, mean args), frozen normalizer;
// episode e resets with seed seed_base + e
EvalSummary Evaluate(const TrainedPolicy& policy, pamdp::Environment& env,
                     int episodes, std::uint64_t seed_base);

struct CurveRow {
  std::int64_t training_steps = 0;
  double wall_clock_s = 0.0;
  std::int64_t low_level_steps = 0;   // training interaction only
  std::int64_t high_level_steps = 0;  // policy decisions during training
  EvalSummary eval;
};

struct TrainSetup {
  sim::TaskSpec task;
  primitives::PrimitiveLibrary library;
  pamdp::ActionMode mode = pamdp::ActionMode::kRaps;
  sim::ObservationMode observation = sim::ObservationMode::kState;
  PpoConfig ppo;
  std::uint64_t seed = 0;
  Budget budget;
  std::int64_t eval_interval = 200;  // in training steps
  int eval_episodes = 5;
  std::function<void(const CurveRow&)> on_eval;  // streamed metrics
};

struct TrainResult {
  TrainedPolicy policy;
  std::vector<CurveRow> curve;
  std::int64_t training_steps = 0;
  std::int64_t low_level_steps = 0;
  double wall_clock_s = 0.0;
};

// gamma actually used: 1 - 1/H in RAPS mode, ppo.gamma in raw mode
double EffectiveGamma(const TrainSetup& setup);

// Alternates rollouts over ppo.num_envs environments with PPO updates and
// evaluates every eval_interval training steps. Deterministic for a fixed
// setup unless the wall-clock bound is what stops training.
TrainResult Train(const TrainSetup& setup);

// evaluation seeds are disjoint from training episode seeds
std::uint64_t EvalSeedBase(std::uint64_t training_seed);

}  // namespace raps::rl

#endif  // RAPS_RL_TRAINER_H_
