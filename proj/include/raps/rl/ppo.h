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

#ifndef RAPS_RL_PPO_H_
#define RAPS_RL_PPO_H_

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "raps/rl/policy.h"

namespace raps::rl {

struct PpoConfig {
  double clip = 0.2;
  double entropy_coef = 0.01;
  double value_coef = 0.5;
  double learning_rate = 3e-4;
  int minibatches_per_epoch = 10;
  double gae_lambda = 0.95;
  double gamma = 0.99;  // RAPS mode overrides with 1 - 1/H
  double max_grad_norm = 0.5;
  int num_envs = 12;
  int epochs = 4;
  int rollout_steps_raps = 20;  // primitive calls per env per rollout
  int rollout_steps_raw = 512;  // low-level steps per env per rollout
  double adam_epsilon = 1e-5;
  int hidden = 64;

  // throws ConfigError when an invariant is violated
  void Validate() const;
  int UpdatesPerRollout() const { return epochs * minibatches_per_epoch; }
};

// Time-major storage: sample (t, n) sits at column/index t * num_envs + n.
struct RolloutBuffer {
  RolloutBuffer() = default;
  RolloutBuffer(int num_envs, int num_steps, int obs_dim, int arg_dim);

  int num_envs = 0;
  int num_steps = 0;
  Eigen::MatrixXd observations;  // normalized, obs_dim x size
  std::vector<int> primitives;
  Eigen::MatrixXd full_args;  // arg_dim x size
  Eigen::VectorXd log_probs;
  Eigen::VectorXd rewards;
  Eigen::VectorXd values;
  Eigen::VectorXd dones;  // 1 when the episode ended after this step
  Eigen::VectorXd bootstrap_values;  // V(s_T) per env

  int Size() const { return num_envs * num_steps; }
  int Index(int t, int n) const { return t * num_envs + n; }
};

struct GaeResult {
  Eigen::VectorXd advantages;  // unnormalized
  Eigen::VectorXd returns;     // advantages + values
};

// delta_t = r_t + gamma V_{t+1} (1 - done_t) - V_t,
// A_t = delta_t + gamma lambda (1 - done_t) A_{t+1}, per env, backwards
GaeResult ComputeGae(const RolloutBuffer& buffer, double gamma, double lambda);

// zero mean, unit variance (population std + 1e-8)
Eigen::VectorXd NormalizeAdvantages(const Eigen::VectorXd& advantages);

struct PpoBatch {
  Eigen::MatrixXd observations;
  std::vector<int> primitives;
  Eigen::MatrixXd full_args;
  Eigen::VectorXd old_log_probs;
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;

  int Size() const { return static_cast<int>(primitives.size()); }
};

PpoBatch GatherBatch(const RolloutBuffer& buffer,
                     const Eigen::VectorXd& advantages,
                     const Eigen::VectorXd& returns,
                     const std::vector<int>& indices);

struct PpoLoss {
  double total = 0.0;
  double policy = 0.0;  // clipped surrogate, negated
  double value = 0.0;   // 0.5 mean (V - R)^2, before value_coef
  double entropy = 0.0;  // mean hybrid entropy
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
};

// Loss = policy + value_coef * value - entropy_coef * entropy. When `grad`
// is non-null it receives dLoss/dparams (resized to NumParams()).
PpoLoss EvaluatePpoLoss(const ActorCritic& model, const PpoBatch& batch,
                        const PpoConfig& config, Eigen::VectorXd* grad);

// rescales grad in place to norm <= max_norm; returns the original norm
double ClipGradNorm(Eigen::VectorXd& grad, double max_norm);

class Adam {
 public:
  Adam() = default;
  Adam(int num_params, double learning_rate, double epsilon);

  void Step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);
  std::int64_t steps() const { return steps_; }

 private:
  double learning_rate_ = 3e-4;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double epsilon_ = 1e-5;
  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
  std::int64_t steps_ = 0;
};

struct UpdateDiagnostics {
  int gradient_steps = 0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
  double max_grad_norm_before_clip = 0.0;
  double max_grad_norm_after_clip = 0.0;

  std::string ToString() const;
};

// epochs x minibatches clipped-surrogate steps over one rollout. Throws
// NumericError (with diagnostics) on a non-finite loss or parameter.
UpdateDiagnostics PpoUpdate(ActorCritic& model, Adam& optimizer,
                            const RolloutBuffer& buffer, const GaeResult& gae,
                            const PpoConfig& config, std::mt19937_64& rng);

}  // namespace raps::rl

#endif  // RAPS_RL_PPO_H_
