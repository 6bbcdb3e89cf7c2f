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

#ifndef RAPS_RL_MLP_H_
#define RAPS_RL_MLP_H_

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "raps/errors.h"

namespace raps::rl {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Fully-connected tanh network that does not own its parameters: weights
// live in a caller-provided flat buffer so several networks can share one
// parameter/gradient vector. Per layer the buffer holds W (out x in,
// column-major) followed by b (out). Batches are column-major: one sample
// per column.
template <typename Scalar>
class Mlp {
 public:
  using Matrix = MatrixX<Scalar>;
  using ConstMatrixMap = Eigen::Map<const Matrix>;
  using MatrixMap = Eigen::Map<Matrix>;
  using ConstVectorMap = Eigen::Map<const VectorX<Scalar>>;
  using VectorMap = Eigen::Map<VectorX<Scalar>>;

  // post-activation outputs of every layer; front() is the input batch
  struct Cache {
    std::vector<Matrix> activations;
  };

  Mlp() = default;
  Mlp(std::vector<int> sizes, bool activate_output)
      : sizes_(std::move(sizes)), activate_output_(activate_output) {
    if (sizes_.size() < 2) throw InputError("mlp needs >= 2 layer sizes");
    for (int size : sizes_) {
      if (size < 1) throw InputError("mlp layer sizes must be >= 1");
    }
  }

  int NumLayers() const { return static_cast<int>(sizes_.size()) - 1; }
  int InputDim() const { return sizes_.front(); }
  int OutputDim() const { return sizes_.back(); }
  const std::vector<int>& sizes() const { return sizes_; }
  bool activate_output() const { return activate_output_; }

  int NumParams() const {
    int count = 0;
    for (int l = 0; l < NumLayers(); ++l) {
      count += sizes_[l + 1] * (sizes_[l] + 1);
    }
    return count;
  }

  // Orthogonal weights scaled by `hidden_gain` (last layer: `output_gain`),
  // zero biases.
  void Initialize(Scalar* params, std::mt19937_64& rng, Scalar hidden_gain,
                  Scalar output_gain) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    int offset = 0;
    for (int l = 0; l < NumLayers(); ++l) {
      const int in = sizes_[l];
      const int out = sizes_[l + 1];
      const int n = std::max(in, out);
      Eigen::MatrixXd gaussian(n, n);
      for (Eigen::Index i = 0; i < gaussian.size(); ++i) {
        gaussian.data()[i] = normal(rng);
      }
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
      Eigen::MatrixXd q = qr.householderQ();
      // sign fix so the distribution is uniform over orthogonal matrices
      const Eigen::VectorXd signs =
          qr.matrixQR().diagonal().unaryExpr([](double v) {
            return v < 0.0 ? -1.0 : 1.0;
          });
      q = q * signs.asDiagonal();
      const Scalar gain = l + 1 == NumLayers() ? output_gain : hidden_gain;
      MatrixMap weight(params + offset, out, in);
      weight = (gain * q.topLeftCorner(out, in)).template cast<Scalar>();
      offset += out * in;
      VectorMap(params + offset, out).setZero();
      offset += out;
    }
  }

  Matrix Forward(const Scalar* params, const Matrix& input,
                 Cache* cache) const {
    if (input.rows() != InputDim()) {
      throw InputError("mlp input has wrong dimension");
    }
    if (cache) {
      cache->activations.clear();
      cache->activations.push_back(input);
    }
    Matrix current = input;
    int offset = 0;
    for (int l = 0; l < NumLayers(); ++l) {
      const int in = sizes_[l];
      const int out = sizes_[l + 1];
      ConstMatrixMap weight(params + offset, out, in);
      ConstVectorMap bias(params + offset + out * in, out);
      offset += out * (in + 1);
      Matrix next = weight * current;
      next.colwise() += bias;
      if (IsActivated(l)) next = next.array().tanh().matrix();
      if (cache) cache->activations.push_back(next);
      current = std::move(next);
    }
    return current;
  }

  // Accumulates dL/dparams into `grad` (same layout as params) given
  // dL/doutput. Writes dL/dinput when `d_input` is non-null.
  void Backward(const Scalar* params, const Cache& cache, Matrix d_output,
                Scalar* grad, Matrix* d_input) const {
    if (static_cast<int>(cache.activations.size()) != NumLayers() + 1) {
      throw InputError("mlp cache does not match network");
    }
    std::vector<int> offsets(NumLayers());
    int offset = 0;
    for (int l = 0; l < NumLayers(); ++l) {
      offsets[l] = offset;
      offset += sizes_[l + 1] * (sizes_[l] + 1);
    }
    Matrix delta = std::move(d_output);
    for (int l = NumLayers() - 1; l >= 0; --l) {
      const int in = sizes_[l];
      const int out = sizes_[l + 1];
      if (IsActivated(l)) {
        const Matrix& post = cache.activations[l + 1];
        delta.array() *= (Scalar(1) - post.array().square());
      }
      const Matrix& pre = cache.activations[l];
      MatrixMap d_weight(grad + offsets[l], out, in);
      VectorMap d_bias(grad + offsets[l] + out * in, out);
      d_weight.noalias() += delta * pre.transpose();
      d_bias += delta.rowwise().sum();
      if (l > 0 || d_input) {
        ConstMatrixMap weight(params + offsets[l], out, in);
        Matrix previous = weight.transpose() * delta;
        delta = std::move(previous);
      }
    }
    if (d_input) *d_input = std::move(delta);
  }

 private:
  bool IsActivated(int layer) const {
    return layer + 1 < NumLayers() || activate_output_;
  }

  std::vector<int> sizes_;
  bool activate_output_ = false;
};

}  // namespace raps::rl

#endif  // RAPS_RL_MLP_H_
