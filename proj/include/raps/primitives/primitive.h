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

#ifndef RAPS_PRIMITIVES_PRIMITIVE_H_
#define RAPS_PRIMITIVES_PRIMITIVE_H_

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "raps/sim/world.h"

namespace raps::primitives {

// The controllable robot state as one vector: (x, y, z, yaw, closure), with
// closure = 1 - aperture so that closing the gripper is a positive change.
// Component order matches sim::RawAction, which lets the controller map
// errors to actions index-for-index.
using ControlVector = Eigen::Matrix<double, 5, 1>;
using ControlMask = Eigen::Matrix<bool, 5, 1>;

enum ControlComponent { kX = 0, kY = 1, kZ = 2, kYaw = 3, kClosure = 4 };

ControlVector ControlState(const sim::RobotState& robot);

// s* restricted to the components a primitive stage drives
struct ControlTarget {
  ControlVector value = ControlVector::Zero();
  ControlMask mask = ControlMask::Constant(false);
};

enum class StageKind {
  kTranslate,         // world-frame displacement of the listed axes
  kForwardTranslate,  // planar (x, y) displacement in the wrist frame
  kTwist,             // yaw rotation
  kGripper,           // closure change
};

struct Stage {
  StageKind kind = StageKind::kTranslate;
  std::vector<int> axes;         // kTranslate only: world axes driven
  std::vector<int> arg_indices;  // which primitive args feed this stage
  int horizon = 1;
};

struct PrimitiveSpec {
  std::string name;
  Eigen::VectorXd lower;  // normalized search space
  Eigen::VectorXd upper;
  std::string target_rule;  // "translate", "twist", "gripper", "composite"
  std::string error_rule = "delta";
  bool uses_gripper = false;
  std::vector<Stage> stages;

  int ArgDim() const { return static_cast<int>(lower.size()); }
  int Horizon() const;
  bool IsComposite() const { return stages.size() > 1; }
  Eigen::VectorXd Clip(const Eigen::VectorXd& args) const {
    return args.cwiseMax(lower).cwiseMin(upper);
  }
};

// throws ConfigError on a malformed spec
void ValidatePrimitive(const PrimitiveSpec& spec);

// Target of a single stage, computed from the state at stage start as
// s* = s_args + args (positions scaled by arg_scale, yaw wrapped, closure
// clipped to [0, 1]). `args` are the primitive's full, already-clipped args.
ControlTarget ComputeStageTarget(const sim::RobotState& robot,
                                 const Stage& stage,
                                 const Eigen::VectorXd& args,
                                 const Eigen::Vector3d& arg_scale);

// Per-stage targets from `robot`, each assuming the preceding stages reached
// theirs. Clips args into the search space; throws InputError on a length
// mismatch or non-finite args.
std::vector<ControlTarget> ComputeTarget(const sim::RobotState& robot,
                                         const PrimitiveSpec& spec,
                                         const Eigen::VectorXd& args,
                                         const Eigen::Vector3d& arg_scale);

// e = s* - s_args on the masked components (yaw error wrapped)
ControlVector StateError(const sim::RobotState& robot,
                         const ControlTarget& target);

inline constexpr double kProportionalGain = 1.0;

// clipped proportional delta-pose controller; zero on unmasked components
sim::RawAction ControlAction(const ControlVector& error);

}  // namespace raps::primitives

#endif  // RAPS_PRIMITIVES_PRIMITIVE_H_
