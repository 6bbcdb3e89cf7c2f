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

#ifndef RAPS_RL_DISTRIBUTIONS_H_
#define RAPS_RL_DISTRIBUTIONS_H_

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "raps/pamdp/hybrid_action.h"
#include "raps/rl/mlp.h"

namespace raps::rl {

// Hybrid policy distribution: a categorical over K primitives times a
// diagonal Gaussian over the concatenated arguments of all primitives. Only
// the chosen primitive's slice enters log-probabilities and entropies.

template <typename Scalar>
inline constexpr Scalar kHalfLogTwoPi =
    Scalar(0.5) * Scalar(1.8378770664093454835606594728112);  // log(2 pi)

template <typename Scalar>
VectorX<Scalar> LogSoftmax(const VectorX<Scalar>& logits) {
  const Scalar shift = logits.maxCoeff();
  const VectorX<Scalar> shifted = logits.array() - shift;
  const Scalar log_sum = std::log(shifted.array().exp().sum());
  return shifted.array() - log_sum;
}

template <typename Scalar>
VectorX<Scalar> Softmax(const VectorX<Scalar>& logits) {
  return LogSoftmax(logits).array().exp();
}

template <typename Scalar>
Scalar CategoricalEntropy(const VectorX<Scalar>& logits) {
  const VectorX<Scalar> log_p = LogSoftmax(logits);
  return -(log_p.array().exp() * log_p.array()).sum();
}

// sum over dimensions of log N(x_i; mean_i, exp(log_std_i)^2)
template <typename Scalar>
Scalar GaussianLogDensity(const VectorX<Scalar>& x, const VectorX<Scalar>& mean,
                          const VectorX<Scalar>& log_std) {
  const auto z = (x - mean).array() / log_std.array().exp();
  return (Scalar(-0.5) * z.square() - log_std.array() - kHalfLogTwoPi<Scalar>)
      .sum();
}

template <typename Scalar>
Scalar GaussianEntropy(const VectorX<Scalar>& log_std) {
  return (log_std.array() + Scalar(0.5) + kHalfLogTwoPi<Scalar>).sum();
}

template <typename Scalar>
struct HybridLogProb {
  Scalar categorical = 0;
  Scalar gaussian = 0;
  Scalar Total() const { return categorical + gaussian; }
};

template <typename Scalar>
HybridLogProb<Scalar> HybridLogProbability(
    const VectorX<Scalar>& logits, const VectorX<Scalar>& mean,
    const VectorX<Scalar>& log_std, const pamdp::HybridActionLayout& layout,
    int primitive, const VectorX<Scalar>& full_args) {
  const int offset = layout.ArgOffset(primitive);
  const int dim = layout.ArgDim(primitive);
  HybridLogProb<Scalar> lp;
  lp.categorical = LogSoftmax(logits)[primitive];
  lp.gaussian = GaussianLogDensity<Scalar>(full_args.segment(offset, dim),
                                           mean.segment(offset, dim),
                                           log_std.segment(offset, dim));
  return lp;
}

template <typename Scalar>
Scalar HybridEntropy(const VectorX<Scalar>& logits,
                     const VectorX<Scalar>& log_std,
                     const pamdp::HybridActionLayout& layout, int primitive) {
  return CategoricalEntropy(logits) +
         GaussianEntropy<Scalar>(log_std.segment(layout.ArgOffset(primitive),
                                                 layout.ArgDim(primitive)));
}

// index of the largest logit; lowest index wins ties
template <typename Scalar>
int ArgMax(const VectorX<Scalar>& logits) {
  int best = 0;
  for (int k = 1; k < logits.size(); ++k) {
    if (logits[k] > logits[best]) best = k;
  }
  return best;
}

}  // namespace raps::rl

#endif  // RAPS_RL_DISTRIBUTIONS_H_
