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

#include "raps/primitives/primitive.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "raps/errors.h"

namespace raps::primitives {

ControlVector ControlState(const sim::RobotState& robot) {
  ControlVector s;
  s << robot.pose.position, robot.pose.yaw, 1.0 - robot.aperture;
  return s;
}

int PrimitiveSpec::Horizon() const {
  int total = 0;
  for (const Stage& stage : stages) total += stage.horizon;
  return total;
}

void ValidatePrimitive(const PrimitiveSpec& spec) {
  const std::string where = "primitive '" + spec.name + "'";
  if (spec.ArgDim() < 1 || spec.upper.size() != spec.ArgDim()) {
    throw ConfigError(where + ": needs at least one argument and matching "
                              "range bounds");
  }
  if ((spec.lower.array() >= spec.upper.array()).any()) {
    throw ConfigError(where + ": argument ranges must satisfy lo < hi");
  }
  if (spec.stages.empty()) throw ConfigError(where + ": no stages");
  std::set<int> used;
  for (const Stage& stage : spec.stages) {
    if (stage.horizon < 1) throw ConfigError(where + ": stage horizon < 1");
    for (int index : stage.arg_indices) {
      if (index < 0 || index >= spec.ArgDim() || !used.insert(index).second) {
        throw ConfigError(where + ": bad stage argument index");
      }
    }
    const std::size_t expected =
        stage.kind == StageKind::kTranslate          ? stage.axes.size()
        : stage.kind == StageKind::kForwardTranslate ? 2
                                                     : 1;
    if (stage.arg_indices.size() != expected || expected == 0) {
      throw ConfigError(where + ": stage argument count mismatch");
    }
  }
  if (static_cast<int>(used.size()) != spec.ArgDim()) {
    throw ConfigError(where + ": every argument must feed exactly one stage");
  }
}

ControlTarget ComputeStageTarget(const sim::RobotState& robot,
                                 const Stage& stage,
                                 const Eigen::VectorXd& args,
                                 const Eigen::Vector3d& arg_scale) {
  const ControlVector s = ControlState(robot);
  ControlTarget target;
  switch (stage.kind) {
    case StageKind::kTranslate:
      for (std::size_t i = 0; i < stage.axes.size(); ++i) {
        const int axis = stage.axes[i];
        target.value[axis] = s[axis] + args[stage.arg_indices[i]] * arg_scale[axis];
        target.mask[axis] = true;
      }
      break;
    case StageKind::kForwardTranslate: {
      const Eigen::Vector2d local(args[stage.arg_indices[0]] * arg_scale.x(),
                                  args[stage.arg_indices[1]] * arg_scale.y());
      const Eigen::Vector2d world_delta =
          Eigen::Rotation2Dd(robot.pose.yaw) * local;
      target.value.head<2>() = s.head<2>() + world_delta;
      target.mask[kX] = target.mask[kY] = true;
      break;
    }
    case StageKind::kTwist:
      target.value[kYaw] = sim::WrapAngle(s[kYaw] + args[stage.arg_indices[0]]);
      target.mask[kYaw] = true;
      break;
    case StageKind::kGripper:
      target.value[kClosure] =
          std::clamp(s[kClosure] + args[stage.arg_indices[0]], 0.0, 1.0);
      target.mask[kClosure] = true;
      break;
  }
  return target;
}

namespace {

void CheckArgs(const PrimitiveSpec& spec, const Eigen::VectorXd& args) {
  if (args.size() != spec.ArgDim()) {
    throw InputError("primitive '" + spec.name + "' expects " +
                     std::to_string(spec.ArgDim()) + " args, got " +
                     std::to_string(args.size()));
  }
  if (!args.allFinite()) {
    throw InputError("primitive '" + spec.name + "' got non-finite args");
  }
}

// state after a stage that reached its target exactly
sim::RobotState Achieve(sim::RobotState robot, const ControlTarget& target) {
  for (int axis = 0; axis < 3; ++axis) {
    if (target.mask[axis]) robot.pose.position[axis] = target.value[axis];
  }
  if (target.mask[kYaw]) robot.pose.yaw = target.value[kYaw];
  if (target.mask[kClosure]) robot.aperture = 1.0 - target.value[kClosure];
  return robot;
}

}  // namespace

std::vector<ControlTarget> ComputeTarget(const sim::RobotState& robot,
                                         const PrimitiveSpec& spec,
                                         const Eigen::VectorXd& args,
                                         const Eigen::Vector3d& arg_scale) {
  CheckArgs(spec, args);
  const Eigen::VectorXd clipped = spec.Clip(args);
  std::vector<ControlTarget> targets;
  sim::RobotState state = robot;
  for (const Stage& stage : spec.stages) {
    targets.push_back(ComputeStageTarget(state, stage, clipped, arg_scale));
    state = Achieve(state, targets.back());
  }
  return targets;
}

ControlVector StateError(const sim::RobotState& robot,
                         const ControlTarget& target) {
  const ControlVector s = ControlState(robot);
  ControlVector error = ControlVector::Zero();
  for (int i = 0; i < 5; ++i) {
    if (!target.mask[i]) continue;
    error[i] = target.value[i] - s[i];
  }
  error[kYaw] = sim::WrapAngle(error[kYaw]);
  return error;
}

sim::RawAction ControlAction(const ControlVector& error) {
  sim::RawAction action = kProportionalGain * error;
  // closure moves by kApertureRate per unit grip command
  action[kClosure] /= sim::kApertureRate;
  const sim::RawAction limits = sim::RawActionLimits();
  return action.cwiseMax(-limits).cwiseMin(limits);
}

}  // namespace raps::primitives
