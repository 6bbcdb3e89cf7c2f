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

#ifndef RAPS_PAMDP_HYBRID_ACTION_H_
#define RAPS_PAMDP_HYBRID_ACTION_H_

#include <Eigen/Dense>

#include <vector>

#include "raps/primitives/library.h"

namespace raps::pamdp {

// Flat policy output: K selector entries followed by the arguments of every
// primitive, concatenated in library order.
class HybridActionLayout {
 public:
  HybridActionLayout() = default;
  explicit HybridActionLayout(std::vector<int> arg_dims);
  static HybridActionLayout FromLibrary(const primitives::PrimitiveLibrary& lib);

  int NumPrimitives() const { return static_cast<int>(arg_dims_.size()); }
  int TotalArgDim() const { return total_arg_dim_; }
  int TotalDim() const { return NumPrimitives() + total_arg_dim_; }
  int ArgDim(int k) const { return arg_dims_.at(k); }
  int ArgOffset(int k) const { return arg_offsets_.at(k); }
  const std::vector<int>& arg_dims() const { return arg_dims_; }
  const std::vector<int>& arg_offsets() const { return arg_offsets_; }

  bool operator==(const HybridActionLayout&) const = default;

 private:
  std::vector<int> arg_dims_;
  std::vector<int> arg_offsets_;
  int total_arg_dim_ = 0;
};

struct HybridAction {
  Eigen::VectorXd one_hot;
  Eigen::VectorXd full_args;

  // [one_hot, full_args] as one vector of layout.TotalDim()
  Eigen::VectorXd Flatten() const;
};

struct DecodedAction {
  int primitive = 0;
  Eigen::VectorXd args;
};

// throws InputError unless one_hot has exactly one 1 and full_args is finite
// and sized for the layout
DecodedAction Decode(const HybridAction& action,
                     const HybridActionLayout& layout);

// places args_k in primitive k's slice; every other slice is `fill`
HybridAction Encode(int primitive, const Eigen::VectorXd& args,
                    const HybridActionLayout& layout, double fill = 0.0);

// gamma = 1 - 1/H for a high-level horizon H >= 1
double DiscountForHorizon(int horizon);

}  // namespace raps::pamdp

#endif  // RAPS_PAMDP_HYBRID_ACTION_H_
