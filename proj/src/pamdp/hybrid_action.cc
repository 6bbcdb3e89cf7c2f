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

#include "raps/pamdp/hybrid_action.h"

#include "raps/errors.h"

namespace raps::pamdp {

HybridActionLayout::HybridActionLayout(std::vector<int> arg_dims)
    : arg_dims_(std::move(arg_dims)) {
  if (arg_dims_.empty()) throw InputError("layout needs at least 1 primitive");
  arg_offsets_.reserve(arg_dims_.size());
  for (int dim : arg_dims_) {
    if (dim < 1) throw InputError("primitive arg dimension must be >= 1");
    arg_offsets_.push_back(total_arg_dim_);
    total_arg_dim_ += dim;
  }
}

HybridActionLayout HybridActionLayout::FromLibrary(
    const primitives::PrimitiveLibrary& lib) {
  std::vector<int> dims;
  for (const primitives::PrimitiveSpec& spec : lib.specs()) {
    dims.push_back(spec.ArgDim());
  }
  return HybridActionLayout(std::move(dims));
}

Eigen::VectorXd HybridAction::Flatten() const {
  Eigen::VectorXd flat(one_hot.size() + full_args.size());
  flat << one_hot, full_args;
  return flat;
}

DecodedAction Decode(const HybridAction& action,
                     const HybridActionLayout& layout) {
  if (action.one_hot.size() != layout.NumPrimitives() ||
      action.full_args.size() != layout.TotalArgDim()) {
    throw InputError("hybrid action does not match layout dimensions");
  }
  if (!action.full_args.allFinite()) {
    throw InputError("hybrid action has non-finite arguments");
  }
  int selected = -1;
  for (int k = 0; k < layout.NumPrimitives(); ++k) {
    const double entry = action.one_hot[k];
    if (entry == 1.0) {
      if (selected >= 0) throw InputError("one-hot has multiple ones");
      selected = k;
    } else if (entry != 0.0) {
      throw InputError("one-hot entries must be 0 or 1");
    }
  }
  if (selected < 0) throw InputError("one-hot has no selected primitive");
  return {selected, action.full_args.segment(layout.ArgOffset(selected),
                                             layout.ArgDim(selected))};
}

HybridAction Encode(int primitive, const Eigen::VectorXd& args,
                    const HybridActionLayout& layout, double fill) {
  if (primitive < 0 || primitive >= layout.NumPrimitives()) {
    throw InputError("primitive index out of range");
  }
  if (args.size() != layout.ArgDim(primitive)) {
    throw InputError("argument length does not match primitive");
  }
  HybridAction action;
  action.one_hot = Eigen::VectorXd::Zero(layout.NumPrimitives());
  action.one_hot[primitive] = 1.0;
  action.full_args = Eigen::VectorXd::Constant(layout.TotalArgDim(), fill);
  action.full_args.segment(layout.ArgOffset(primitive), args.size()) = args;
  return action;
}

double DiscountForHorizon(int horizon) {
  if (horizon < 1) throw InputError("horizon must be >= 1");
  return 1.0 - 1.0 / static_cast<double>(horizon);
}

}  // namespace raps::pamdp
