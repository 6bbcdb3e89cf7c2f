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

#ifndef RAPS_RL_POLICY_H_
#define RAPS_RL_POLICY_H_

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "raps/pamdp/hybrid_action.h"
#include "raps/rl/mlp.h"

namespace raps::rl {

inline constexpr double kMinLogStd = -5.0;
inline constexpr double kMaxLogStd = 2.0;

struct ParamSegment {
  std::string name;
  int offset = 0;
  int size = 0;
};

struct PolicySample {
  pamdp::HybridAction action;
  int primitive = 0;
  double log_prob = 0.0;
  double entropy = 0.0;
  double value = 0.0;
};

// Actor-critic over the hybrid action space. The actor is a shared tanh
// trunk feeding a logits head (K outputs) and an args-mean head (one output
// per argument of every primitive), plus a state-independent log-std per
// argument. The critic is a separate tanh network with a scalar output.
// All parameters live in one flat vector, in declaration order:
// trunk, logits, mean, log_std, value.
class ActorCritic {
 public:
  using Net = Mlp<double>;

  ActorCritic() = default;
  ActorCritic(int obs_dim, pamdp::HybridActionLayout layout, int hidden = 64);

  void Initialize(std::uint64_t seed);

  int obs_dim() const { return obs_dim_; }
  int hidden() const { return hidden_; }
  const pamdp::HybridActionLayout& layout() const { return layout_; }
  int NumParams() const { return static_cast<int>(params_.size()); }
  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  const std::vector<ParamSegment>& segments() const { return segments_; }
  const ParamSegment& segment(const std::string& name) const;

  const Net& trunk() const { return trunk_; }
  const Net& logits_head() const { return logits_head_; }
  const Net& mean_head() const { return mean_head_; }
  const Net& value_net() const { return value_net_; }

  Eigen::VectorXd LogStd() const;
  void ClampLogStd();

  struct Heads {
    Eigen::MatrixXd logits;  // K x B
    Eigen::MatrixXd mean;    // A x B
    Eigen::RowVectorXd values;
  };
  // obs: obs_dim x B, already normalized
  Heads Forward(const Eigen::MatrixXd& obs) const;

  // samples a primitive from the categorical and args for ALL primitives
  PolicySample Sample(const Eigen::VectorXd& obs, std::mt19937_64& rng) const;
  // argmax primitive (lowest index on ties) with mean args
  PolicySample Deterministic(const Eigen::VectorXd& obs) const;

  double LogProb(const Eigen::VectorXd& obs, int primitive,
                 const Eigen::VectorXd& full_args) const;

 private:
  const double* Data(const ParamSegment& seg) const {
    return params_.data() + seg.offset;
  }

  int obs_dim_ = 0;
  int hidden_ = 64;
  pamdp::HybridActionLayout layout_;
  Net trunk_;
  Net logits_head_;
  Net mean_head_;
  Net value_net_;
  std::vector<ParamSegment> segments_;
  Eigen::VectorXd params_;
};

// Running mean/variance of observations (parallel-merge form). Normalized
// observations are clipped to [-10, 10].
class ObservationNormalizer {
 public:
  ObservationNormalizer() = default;
  explicit ObservationNormalizer(int dim);

  void Update(const Eigen::MatrixXd& batch);  // dim x B
  Eigen::VectorXd Normalize(const Eigen::VectorXd& obs) const;
  Eigen::MatrixXd Normalize(const Eigen::MatrixXd& batch) const;

  int dim() const { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::VectorXd& var() const { return var_; }
  double count() const { return count_; }
  void Set(Eigen::VectorXd mean, Eigen::VectorXd var, double count);

 private:
  Eigen::VectorXd mean_;
  Eigen::VectorXd var_;
  double count_ = 1e-4;
};

}  // namespace raps::rl

#endif  // RAPS_RL_POLICY_H_
