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

#include "raps/rl/trainer.h"

#include <chrono>
#include <set>

#include "raps/errors.h"

namespace raps::rl {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t EvalSeedBase(std::uint64_t training_seed) {
  return SplitMix64(training_seed ^ 0x5eed0e7a1ULL) | (1ULL << 63);
}

ActResult Act(const TrainedPolicy& policy, pamdp::Environment& env,
              const Eigen::VectorXd& observation, std::mt19937_64* rng) {
  ActResult result;
  const Eigen::VectorXd normalized = policy.normalizer.Normalize(observation);
  result.sample = rng ? policy.model.Sample(normalized, *rng)
                      : policy.model.Deterministic(normalized);
  if (env.mode() == pamdp::ActionMode::kRaps) {
    result.step = env.Step(result.sample.action);
  } else {
    const sim::RawAction action =
        result.sample.action.full_args.cwiseProduct(sim::RawActionLimits());
    result.step = env.StepRaw(action);
  }
  return result;
}

double EvalSummary::MeanUniquePrimitives() const {
  if (unique_per_episode.empty()) return 0.0;
  double total = 0.0;
  for (int count : unique_per_episode) total += count;
  return total / static_cast<double>(unique_per_episode.size());
}

EvalSummary Evaluate(const TrainedPolicy& policy, pamdp::Environment& env,
                     int episodes, std::uint64_t seed_base) {
  const bool raps = env.mode() == pamdp::ActionMode::kRaps;
  EvalSummary summary;
  summary.episodes = episodes;
  if (raps) summary.primitive_counts.assign(env.library().Size(), 0);
  int successes = 0;
  double total_return = 0.0;
  for (int e = 0; e < episodes; ++e) {
    Eigen::VectorXd obs = env.Reset(seed_base + static_cast<std::uint64_t>(e));
    std::set<int> used;
    bool success = false;
    while (!env.episode_done()) {
      const ActResult act = Act(policy, env, obs, nullptr);
      obs = act.step.observation;
      total_return += act.step.reward;
      success = success || act.step.info.success;
      if (raps) {
        ++summary.primitive_counts[act.sample.primitive];
        used.insert(act.sample.primitive);
      }
    }
    summary.high_level_steps += env.high_level_steps();
    if (raps && env.high_level_steps() < env.task().high_level_horizon) {
      summary.early_termination = true;
    }
    if (raps) summary.unique_per_episode.push_back(static_cast<int>(used.size()));
    if (success) ++successes;
  }
  if (episodes > 0) {
    summary.success_rate = static_cast<double>(successes) / episodes;
    summary.mean_return = total_return / episodes;
  }
  return summary;
}

double EffectiveGamma(const TrainSetup& setup) {
  return setup.mode == pamdp::ActionMode::kRaps
             ? pamdp::DiscountForHorizon(setup.task.high_level_horizon)
             : setup.ppo.gamma;
}

TrainResult Train(const TrainSetup& setup) {
  if (setup.budget.Empty()) throw ConfigError("training budget has no bound");
  if (setup.eval_interval < 1) throw ConfigError("eval_interval must be >= 1");
  if (setup.eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
  PpoConfig config = setup.ppo;
  config.gamma = EffectiveGamma(setup);
  config.Validate();

  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  const bool raps = setup.mode == pamdp::ActionMode::kRaps;
  std::vector<pamdp::Environment> envs;
  envs.reserve(config.num_envs);
  for (int n = 0; n < config.num_envs; ++n) {
    envs.emplace_back(setup.task, setup.library, setup.mode, setup.observation);
  }
  pamdp::Environment eval_env(setup.task, setup.library, setup.mode,
                              setup.observation);
  const int obs_dim = envs.front().ObservationDim();
  const pamdp::HybridActionLayout& layout = envs.front().layout();

  TrainResult result;
  TrainedPolicy& policy = result.policy;
  policy.mode = setup.mode;
  policy.model = ActorCritic(obs_dim, layout, config.hidden);
  policy.model.Initialize(SplitMix64(setup.seed ^ 0x1417ULL));
  policy.normalizer = ObservationNormalizer(obs_dim);
  Adam optimizer(policy.model.NumParams(), config.learning_rate,
                 config.adam_epsilon);

  std::mt19937_64 sample_rng(SplitMix64(setup.seed ^ 0x5a3e1ULL));
  std::mt19937_64 shuffle_rng(SplitMix64(setup.seed ^ 0x5f1eULL));
  std::uint64_t episode_seed = SplitMix64(setup.seed) & ~(1ULL << 63);
  const std::uint64_t eval_seed_base = EvalSeedBase(setup.seed);

  std::vector<Eigen::VectorXd> observations;
  for (pamdp::Environment& env : envs) {
    observations.push_back(env.Reset(episode_seed++));
  }

  const int steps = raps ? config.rollout_steps_raps : config.rollout_steps_raw;
  std::int64_t high_level_steps = 0;
  std::int64_t next_eval = setup.eval_interval;

  const auto record_eval = [&] {
    CurveRow row;
    row.training_steps = result.training_steps;
    row.low_level_steps = result.low_level_steps;
    row.high_level_steps = high_level_steps;
    row.eval = Evaluate(policy, eval_env, setup.eval_episodes, eval_seed_base);
    row.wall_clock_s = elapsed();
    result.curve.push_back(row);
    if (setup.on_eval) setup.on_eval(row);
  };
  const auto exhausted = [&] {
    const Budget& b = setup.budget;
    return (b.max_training_steps && result.training_steps >= *b.max_training_steps) ||
           (b.max_low_level_steps &&
            result.low_level_steps >= *b.max_low_level_steps) ||
           (b.max_wall_clock_s && elapsed() >= *b.max_wall_clock_s);
  };

  while (!exhausted()) {
    RolloutBuffer buffer(config.num_envs, steps, obs_dim, layout.TotalArgDim());
    Eigen::MatrixXd raw_observations(obs_dim, buffer.Size());
    for (int t = 0; t < steps; ++t) {
      for (int n = 0; n < config.num_envs; ++n) {
        const int i = buffer.Index(t, n);
        raw_observations.col(i) = observations[n];
        buffer.observations.col(i) = policy.normalizer.Normalize(observations[n]);
        const ActResult act = Act(policy, envs[n], observations[n], &sample_rng);
        buffer.primitives[i] = act.sample.primitive;
        buffer.full_args.col(i) = act.sample.action.full_args;
        buffer.log_probs[i] = act.sample.log_prob;
        buffer.values[i] = act.sample.value;
        buffer.rewards[i] = act.step.reward;
        buffer.dones[i] = act.step.done ? 1.0 : 0.0;
        result.low_level_steps += act.step.info.low_level_steps;
        ++high_level_steps;
        observations[n] = act.step.done ? envs[n].Reset(episode_seed++)
                                        : act.step.observation;
      }
    }
    for (int n = 0; n < config.num_envs; ++n) {
      buffer.bootstrap_values[n] =
          policy.model.Forward(policy.normalizer.Normalize(observations[n]))
              .values[0];
    }
    policy.normalizer.Update(raw_observations);

    const GaeResult gae = ComputeGae(buffer, config.gamma, config.gae_lambda);
    const UpdateDiagnostics diag =
        PpoUpdate(policy.model, optimizer, buffer, gae, config, shuffle_rng);
    result.training_steps += diag.gradient_steps;

    if (result.training_steps >= next_eval) {
      record_eval();
      while (next_eval <= result.training_steps) next_eval += setup.eval_interval;
    }
  }
  if (result.curve.empty() ||
      result.curve.back().training_steps != result.training_steps) {
    record_eval();
  }
  result.wall_clock_s = elapsed();
  return result;
}

}  // namespace raps::rl
