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

#include "raps/rl/ppo.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "raps/errors.h"
#include "raps/rl/distributions.h"

namespace raps::rl {

void PpoConfig::Validate() const {
  if (!(clip > 0.0)) throw ConfigError("ppo clip must be > 0");
  if (gae_lambda < 0.0 || gae_lambda > 1.0) {
    throw ConfigError("gae_lambda must be in [0, 1]");
  }
  if (!(gamma > 0.0) || gamma > 1.0) throw ConfigError("gamma must be in (0, 1]");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (!(max_grad_norm > 0.0)) throw ConfigError("max_grad_norm must be > 0");
  if (minibatches_per_epoch < 1 || epochs < 1 || num_envs < 1 ||
      rollout_steps_raps < 1 || rollout_steps_raw < 1 || hidden < 1) {
    throw ConfigError("ppo counts must be >= 1");
  }
  if (entropy_coef < 0.0 || value_coef < 0.0) {
    throw ConfigError("loss coefficients must be >= 0");
  }
}

RolloutBuffer::RolloutBuffer(int envs, int steps, int obs_dim, int arg_dim)
    : num_envs(envs), num_steps(steps) {
  const int size = envs * steps;
  observations = Eigen::MatrixXd::Zero(obs_dim, size);
  primitives.assign(size, 0);
  full_args = Eigen::MatrixXd::Zero(arg_dim, size);
  log_probs = Eigen::VectorXd::Zero(size);
  rewards = Eigen::VectorXd::Zero(size);
  values = Eigen::VectorXd::Zero(size);
  dones = Eigen::VectorXd::Zero(size);
  bootstrap_values = Eigen::VectorXd::Zero(envs);
}

GaeResult ComputeGae(const RolloutBuffer& buffer, double gamma,
                     double lambda) {
  GaeResult result;
  result.advantages = Eigen::VectorXd::Zero(buffer.Size());
  for (int n = 0; n < buffer.num_envs; ++n) {
    double running = 0.0;
    for (int t = buffer.num_steps - 1; t >= 0; --t) {
      const int i = buffer.Index(t, n);
      const double next_value = t + 1 == buffer.num_steps
                                    ? buffer.bootstrap_values[n]
                                    : buffer.values[buffer.Index(t + 1, n)];
      const double nonterminal = 1.0 - buffer.dones[i];
      const double delta = buffer.rewards[i] +
                           gamma * next_value * nonterminal - buffer.values[i];
      running = delta + gamma * lambda * nonterminal * running;
      result.advantages[i] = running;
    }
  }
  result.returns = result.advantages + buffer.values;
  return result;
}

Eigen::VectorXd NormalizeAdvantages(const Eigen::VectorXd& advantages) {
  if (advantages.size() == 0) return advantages;
  const double mean = advantages.mean();
  const double variance =
      (advantages.array() - mean).square().sum() / advantages.size();
  return (advantages.array() - mean) / (std::sqrt(variance) + 1e-8);
}

PpoBatch GatherBatch(const RolloutBuffer& buffer,
                     const Eigen::VectorXd& advantages,
                     const Eigen::VectorXd& returns,
                     const std::vector<int>& indices) {
  const int size = static_cast<int>(indices.size());
  PpoBatch batch;
  batch.observations.resize(buffer.observations.rows(), size);
  batch.full_args.resize(buffer.full_args.rows(), size);
  batch.old_log_probs.resize(size);
  batch.advantages.resize(size);
  batch.returns.resize(size);
  batch.primitives.resize(size);
  for (int j = 0; j < size; ++j) {
    const int i = indices[j];
    batch.observations.col(j) = buffer.observations.col(i);
    batch.full_args.col(j) = buffer.full_args.col(i);
    batch.primitives[j] = buffer.primitives[i];
    batch.old_log_probs[j] = buffer.log_probs[i];
    batch.advantages[j] = advantages[i];
    batch.returns[j] = returns[i];
  }
  return batch;
}

PpoLoss EvaluatePpoLoss(const ActorCritic& model, const PpoBatch& batch,
                        const PpoConfig& config, Eigen::VectorXd* grad) {
  using Net = ActorCritic::Net;
  const int size = batch.Size();
  if (size == 0) throw InputError("empty PPO batch");
  const pamdp::HybridActionLayout& layout = model.layout();
  const Eigen::VectorXd& params = model.params();
  const ParamSegment& trunk_seg = model.segment("trunk");
  const ParamSegment& logits_seg = model.segment("logits");
  const ParamSegment& mean_seg = model.segment("mean");
  const ParamSegment& log_std_seg = model.segment("log_std");
  const ParamSegment& value_seg = model.segment("value");
  const double* p = params.data();

  Net::Cache trunk_cache, logits_cache, mean_cache, value_cache;
  const Eigen::MatrixXd features = model.trunk().Forward(
      p + trunk_seg.offset, batch.observations, &trunk_cache);
  const Eigen::MatrixXd logits = model.logits_head().Forward(
      p + logits_seg.offset, features, &logits_cache);
  const Eigen::MatrixXd means = model.mean_head().Forward(
      p + mean_seg.offset, features, &mean_cache);
  const Eigen::RowVectorXd values = model.value_net().Forward(
      p + value_seg.offset, batch.observations, &value_cache);
  const Eigen::VectorXd log_std =
      params.segment(log_std_seg.offset, log_std_seg.size);
  const Eigen::VectorXd inv_var = (-2.0 * log_std.array()).exp();

  const double inv_size = 1.0 / size;
  const double eps = config.clip;
  Eigen::MatrixXd d_logits = Eigen::MatrixXd::Zero(logits.rows(), size);
  Eigen::MatrixXd d_means = Eigen::MatrixXd::Zero(means.rows(), size);
  Eigen::VectorXd d_log_std = Eigen::VectorXd::Zero(log_std.size());
  Eigen::RowVectorXd d_values(size);

  PpoLoss loss;
  for (int i = 0; i < size; ++i) {
    const int k = batch.primitives[i];
    const int offset = layout.ArgOffset(k);
    const int dim = layout.ArgDim(k);
    const Eigen::VectorXd column_logits = logits.col(i);
    const Eigen::VectorXd log_p = LogSoftmax<double>(column_logits);
    const Eigen::VectorXd prob = log_p.array().exp();
    const double categorical_entropy = -(prob.array() * log_p.array()).sum();

    const Eigen::VectorXd z =
        (batch.full_args.col(i).segment(offset, dim) -
         means.col(i).segment(offset, dim))
            .cwiseProduct(inv_var.segment(offset, dim).cwiseSqrt());
    const double gaussian =
        (-0.5 * z.array().square() - log_std.segment(offset, dim).array() -
         kHalfLogTwoPi<double>)
            .sum();
    const double log_prob = log_p[k] + gaussian;
    const double entropy =
        categorical_entropy + GaussianEntropy<double>(log_std.segment(offset, dim));

    const double advantage = batch.advantages[i];
    const double ratio = std::exp(log_prob - batch.old_log_probs[i]);
    const double clipped_ratio = std::clamp(ratio, 1.0 - eps, 1.0 + eps);
    const double unclipped_objective = ratio * advantage;
    const double clipped_objective = clipped_ratio * advantage;
    const bool unclipped_active = unclipped_objective <= clipped_objective;
    loss.policy -= std::min(unclipped_objective, clipped_objective) * inv_size;
    loss.entropy += entropy * inv_size;
    loss.approx_kl += (batch.old_log_probs[i] - log_prob) * inv_size;
    if (std::abs(ratio - 1.0) > eps) loss.clip_fraction += inv_size;
    const double value_error = values[i] - batch.returns[i];
    loss.value += 0.5 * value_error * value_error * inv_size;

    if (!grad) continue;
    // dLoss/dlog_prob from the surrogate; zero on the clipped branch
    const double g = unclipped_active ? -advantage * ratio * inv_size : 0.0;
    const double entropy_weight = config.entropy_coef * inv_size;

    Eigen::VectorXd d_column = -g * prob;
    d_column[k] += g;
    // -entropy_coef * dH/dlogits with dH/dlogits = -p (log p + H)
    d_column.array() +=
        entropy_weight * prob.array() * (log_p.array() + categorical_entropy);
    d_logits.col(i) = d_column;

    // dlogN/dmean = (x - mean) / sigma^2, dlogN/dlog_std = z^2 - 1
    d_means.col(i).segment(offset, dim) =
        g * z.cwiseProduct(inv_var.segment(offset, dim).cwiseSqrt());
    d_log_std.segment(offset, dim).array() +=
        g * (z.array().square() - 1.0) - entropy_weight;
    d_values[i] = config.value_coef * value_error * inv_size;
  }
  loss.total = loss.policy + config.value_coef * loss.value -
               config.entropy_coef * loss.entropy;
  if (!grad) return loss;

  grad->setZero(params.size());
  double* gp = grad->data();
  Eigen::MatrixXd d_features_logits, d_features_mean;
  model.logits_head().Backward(p + logits_seg.offset, logits_cache, d_logits,
                               gp + logits_seg.offset, &d_features_logits);
  model.mean_head().Backward(p + mean_seg.offset, mean_cache, d_means,
                             gp + mean_seg.offset, &d_features_mean);
  model.trunk().Backward(p + trunk_seg.offset, trunk_cache,
                         d_features_logits + d_features_mean,
                         gp + trunk_seg.offset, nullptr);
  grad->segment(log_std_seg.offset, log_std_seg.size) = d_log_std;
  model.value_net().Backward(p + value_seg.offset, value_cache, d_values,
                             gp + value_seg.offset, nullptr);
  return loss;
}

double ClipGradNorm(Eigen::VectorXd& grad, double max_norm) {
  const double norm = grad.norm();
  if (norm > max_norm) grad *= max_norm / (norm + 1e-6);
  return norm;
}

Adam::Adam(int num_params, double learning_rate, double epsilon)
    : learning_rate_(learning_rate),
      epsilon_(epsilon),
      m_(Eigen::VectorXd::Zero(num_params)),
      v_(Eigen::VectorXd::Zero(num_params)) {}

void Adam::Step(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
  if (grad.size() != m_.size() || params.size() != m_.size()) {
    throw InputError("adam: parameter count mismatch");
  }
  ++steps_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseAbs2();
  const double bias1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double bias2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  const double step_size = learning_rate_ * std::sqrt(bias2) / bias1;
  params.array() -=
      step_size * m_.array() / (v_.array().sqrt() + epsilon_ * std::sqrt(bias2));
}

std::string UpdateDiagnostics::ToString() const {
  std::ostringstream out;
  out << "steps=" << gradient_steps << " policy_loss=" << policy_loss
      << " value_loss=" << value_loss << " entropy=" << entropy
      << " approx_kl=" << approx_kl << " clip_fraction=" << clip_fraction
      << " grad_norm=" << max_grad_norm_before_clip;
  return out.str();
}

UpdateDiagnostics PpoUpdate(ActorCritic& model, Adam& optimizer,
                            const RolloutBuffer& buffer, const GaeResult& gae,
                            const PpoConfig& config, std::mt19937_64& rng) {
  const Eigen::VectorXd advantages = NormalizeAdvantages(gae.advantages);
  const int size = buffer.Size();
  const int minibatches = std::min(config.minibatches_per_epoch, size);
  std::vector<int> order(size);
  Eigen::VectorXd grad;
  UpdateDiagnostics diag;
  double kl_sum = 0.0, clip_sum = 0.0, policy_sum = 0.0, value_sum = 0.0,
         entropy_sum = 0.0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int mb = 0; mb < minibatches; ++mb) {
      const int begin = static_cast<int>(static_cast<long>(size) * mb / minibatches);
      const int end =
          static_cast<int>(static_cast<long>(size) * (mb + 1) / minibatches);
      const std::vector<int> indices(order.begin() + begin, order.begin() + end);
      const PpoBatch batch = GatherBatch(buffer, advantages, gae.returns, indices);
      const PpoLoss loss = EvaluatePpoLoss(model, batch, config, &grad);
      if (!std::isfinite(loss.total) || !grad.allFinite()) {
        throw NumericError("non-finite PPO loss or gradient", diag.ToString());
      }
      const double norm = ClipGradNorm(grad, config.max_grad_norm);
      diag.max_grad_norm_before_clip =
          std::max(diag.max_grad_norm_before_clip, norm);
      diag.max_grad_norm_after_clip =
          std::max(diag.max_grad_norm_after_clip, grad.norm());
      optimizer.Step(model.params(), grad);
      model.ClampLogStd();
      if (!model.params().allFinite()) {
        throw NumericError("non-finite parameters after update",
                           diag.ToString());
      }
      ++diag.gradient_steps;
      kl_sum += loss.approx_kl;
      clip_sum += loss.clip_fraction;
      policy_sum += loss.policy;
      value_sum += loss.value;
      entropy_sum += loss.entropy;
    }
  }
  const double n = std::max(1, diag.gradient_steps);
  diag.approx_kl = kl_sum / n;
  diag.clip_fraction = clip_sum / n;
  diag.policy_loss = policy_sum / n;
  diag.value_loss = value_sum / n;
  diag.entropy = entropy_sum / n;
  return diag;
}

}  // namespace raps::rl
