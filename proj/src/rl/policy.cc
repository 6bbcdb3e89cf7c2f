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

#include "raps/rl/policy.h"

#include <cmath>

#include "raps/errors.h"
#include "raps/rl/distributions.h"

namespace raps::rl {

ActorCritic::ActorCritic(int obs_dim, pamdp::HybridActionLayout layout,
                         int hidden)
    : obs_dim_(obs_dim),
      hidden_(hidden),
      layout_(std::move(layout)),
      trunk_({obs_dim, hidden, hidden}, /*activate_output=*/true),
      logits_head_({hidden, layout_.NumPrimitives()}, false),
      mean_head_({hidden, layout_.TotalArgDim()}, false),
      value_net_({obs_dim, hidden, hidden, 1}, false) {
  int offset = 0;
  const auto add = [&](const std::string& name, int size) {
    segments_.push_back({name, offset, size});
    offset += size;
  };
  add("trunk", trunk_.NumParams());
  add("logits", logits_head_.NumParams());
  add("mean", mean_head_.NumParams());
  add("log_std", layout_.TotalArgDim());
  add("value", value_net_.NumParams());
  params_ = Eigen::VectorXd::Zero(offset);
}

const ParamSegment& ActorCritic::segment(const std::string& name) const {
  for (const ParamSegment& seg : segments_) {
    if (seg.name == name) return seg;
  }
  throw InputError("no parameter segment '" + name + "'");
}

void ActorCritic::Initialize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double root2 = std::sqrt(2.0);
  params_.setZero();
  trunk_.Initialize(params_.data() + segment("trunk").offset, rng, root2,
                    root2);
  logits_head_.Initialize(params_.data() + segment("logits").offset, rng,
                          0.01, 0.01);
  mean_head_.Initialize(params_.data() + segment("mean").offset, rng, 0.01,
                        0.01);
  value_net_.Initialize(params_.data() + segment("value").offset, rng, root2,
                        1.0);
}

Eigen::VectorXd ActorCritic::LogStd() const {
  const ParamSegment& seg = segment("log_std");
  return params_.segment(seg.offset, seg.size);
}

void ActorCritic::ClampLogStd() {
  const ParamSegment& seg = segment("log_std");
  params_.segment(seg.offset, seg.size) =
      params_.segment(seg.offset, seg.size).cwiseMax(kMinLogStd).cwiseMin(
          kMaxLogStd);
}

ActorCritic::Heads ActorCritic::Forward(const Eigen::MatrixXd& obs) const {
  if (obs.rows() != obs_dim_) {
    throw InputError("observation dimension does not match the policy");
  }
  if (!obs.allFinite()) throw InputError("non-finite observation");
  Heads heads;
  const Eigen::MatrixXd features =
      trunk_.Forward(Data(segment("trunk")), obs, nullptr);
  heads.logits = logits_head_.Forward(Data(segment("logits")), features, nullptr);
  heads.mean = mean_head_.Forward(Data(segment("mean")), features, nullptr);
  heads.values = value_net_.Forward(Data(segment("value")), obs, nullptr);
  return heads;
}

PolicySample ActorCritic::Sample(const Eigen::VectorXd& obs,
                                 std::mt19937_64& rng) const {
  const Heads heads = Forward(obs);
  const Eigen::VectorXd logits = heads.logits.col(0);
  const Eigen::VectorXd mean = heads.mean.col(0);
  const Eigen::VectorXd log_std = LogStd();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::VectorXd probs = Softmax<double>(logits);
  const double u = unit(rng);
  int primitive = static_cast<int>(probs.size()) - 1;
  double cumulative = 0.0;
  for (int k = 0; k < probs.size(); ++k) {
    cumulative += probs[k];
    if (u < cumulative) {
      primitive = k;
      break;
    }
  }
  Eigen::VectorXd full_args(mean.size());
  for (Eigen::Index i = 0; i < full_args.size(); ++i) {
    full_args[i] = mean[i] + std::exp(log_std[i]) * normal(rng);
  }

  PolicySample sample;
  sample.primitive = primitive;
  sample.action.one_hot = Eigen::VectorXd::Zero(layout_.NumPrimitives());
  sample.action.one_hot[primitive] = 1.0;
  sample.action.full_args = full_args;
  sample.log_prob = HybridLogProbability<double>(logits, mean, log_std,
                                                 layout_, primitive, full_args)
                        .Total();
  sample.entropy = HybridEntropy<double>(logits, log_std, layout_, primitive);
  sample.value = heads.values[0];
  return sample;
}

PolicySample ActorCritic::Deterministic(const Eigen::VectorXd& obs) const {
  const Heads heads = Forward(obs);
  const Eigen::VectorXd logits = heads.logits.col(0);
  const Eigen::VectorXd log_std = LogStd();
  PolicySample sample;
  sample.primitive = ArgMax<double>(logits);
  sample.action.one_hot = Eigen::VectorXd::Zero(layout_.NumPrimitives());
  sample.action.one_hot[sample.primitive] = 1.0;
  sample.action.full_args = heads.mean.col(0);
  sample.log_prob =
      HybridLogProbability<double>(logits, sample.action.full_args, log_std,
                                   layout_, sample.primitive,
                                   sample.action.full_args)
          .Total();
  sample.entropy =
      HybridEntropy<double>(logits, log_std, layout_, sample.primitive);
  sample.value = heads.values[0];
  return sample;
}

double ActorCritic::LogProb(const Eigen::VectorXd& obs, int primitive,
                            const Eigen::VectorXd& full_args) const {
  const Heads heads = Forward(obs);
  return HybridLogProbability<double>(heads.logits.col(0), heads.mean.col(0),
                                      LogStd(), layout_, primitive, full_args)
      .Total();
}

ObservationNormalizer::ObservationNormalizer(int dim)
    : mean_(Eigen::VectorXd::Zero(dim)), var_(Eigen::VectorXd::Ones(dim)) {}

void ObservationNormalizer::Update(const Eigen::MatrixXd& batch) {
  if (batch.rows() != dim()) throw InputError("normalizer dimension mismatch");
  if (batch.cols() == 0) return;
  const double n = static_cast<double>(batch.cols());
  const Eigen::VectorXd batch_mean = batch.rowwise().mean();
  const Eigen::VectorXd batch_var =
      (batch.colwise() - batch_mean).array().square().rowwise().sum() / n;
  const double total = count_ + n;
  const Eigen::VectorXd delta = batch_mean - mean_;
  mean_ += delta * (n / total);
  const Eigen::VectorXd m2 = var_ * count_ + batch_var * n +
                             delta.array().square().matrix() * (count_ * n / total);
  var_ = m2 / total;
  count_ = total;
}

Eigen::VectorXd ObservationNormalizer::Normalize(
    const Eigen::VectorXd& obs) const {
  return ((obs - mean_).array() / (var_.array() + 1e-8).sqrt())
      .cwiseMax(-10.0)
      .cwiseMin(10.0);
}

Eigen::MatrixXd ObservationNormalizer::Normalize(
    const Eigen::MatrixXd& batch) const {
  const Eigen::ArrayXd inv_std = (var_.array() + 1e-8).sqrt().inverse();
  Eigen::MatrixXd out = batch.colwise() - mean_;
  out = (out.array().colwise() * inv_std).cwiseMax(-10.0).cwiseMin(10.0);
  return out;
}

void ObservationNormalizer::Set(Eigen::VectorXd mean, Eigen::VectorXd var,
                                double count) {
  if (mean.size() != var.size()) throw InputError("normalizer size mismatch");
  mean_ = std::move(mean);
  var_ = std::move(var);
  count_ = count;
}

}  // namespace raps::rl
