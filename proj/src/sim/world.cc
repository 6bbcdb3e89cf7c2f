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

#include "raps/sim/world.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "raps/errors.h"

namespace raps::sim {

RawAction RawActionLimits() {
  RawAction limits;
  limits << kMaxTranslationStep, kMaxTranslationStep, kMaxTranslationStep,
      kMaxYawStep, 1.0;
  return limits;
}

double WrapAngle(double angle) {
  constexpr double kPi = std::numbers::pi;
  if (angle >= -kPi && angle <= kPi) return angle;
  double wrapped = std::fmod(angle + kPi, 2.0 * kPi);
  if (wrapped < 0.0) wrapped += 2.0 * kPi;
  return wrapped - kPi;
}

const char* JointKindName(JointKind kind) {
  switch (kind) {
    case JointKind::kPrismatic:
      return "prismatic";
    case JointKind::kRevolute:
      return "revolute";
    case JointKind::kFree:
      return "free";
  }
  return "unknown";
}

JointKind ParseJointKind(const std::string& name) {
  if (name == "prismatic") return JointKind::kPrismatic;
  if (name == "revolute") return JointKind::kRevolute;
  if (name == "free") return JointKind::kFree;
  throw ConfigError("unknown joint kind '" + name + "'");
}

Eigen::Vector3d ArticulatedObject::Handle() const {
  switch (kind) {
    case JointKind::kPrismatic:
      return anchor + qpos[0] * axis;
    case JointKind::kRevolute:
      return anchor + Eigen::AngleAxisd(qpos[0], axis) * lever;
    case JointKind::kFree:
      return qpos.head<3>();
  }
  return anchor;
}

double TaskSpec::FreeDistanceScale() const {
  return workspace.HalfExtent().mean();
}

int TaskSpec::ObjectIndex(const std::string& id) const {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].object.id == id) return static_cast<int>(i);
  }
  return -1;
}

namespace {

bool AllFinite(const Eigen::VectorXd& v) { return v.allFinite(); }

void ValidateObject(const ObjectInit& init, const TaskSpec& task) {
  const ArticulatedObject& obj = init.object;
  const std::string where = "task '" + task.name + "', object '" + obj.id + "'";
  const int dim = obj.QposDim();
  if (obj.qpos.size() != dim || obj.lower.size() != dim ||
      obj.upper.size() != dim || init.init_lower.size() != dim ||
      init.init_upper.size() != dim) {
    throw ConfigError(where + ": qpos/range dimension mismatch");
  }
  if (!AllFinite(obj.lower) || !AllFinite(obj.upper) ||
      !AllFinite(init.init_lower) || !AllFinite(init.init_upper)) {
    throw ConfigError(where + ": non-finite range");
  }
  if ((obj.lower.array() > obj.upper.array()).any()) {
    throw ConfigError(where + ": joint range lower > upper");
  }
  if ((init.init_lower.array() > init.init_upper.array()).any() ||
      (init.init_lower.array() < obj.lower.array()).any() ||
      (init.init_upper.array() > obj.upper.array()).any()) {
    throw ConfigError(where + ": initial range outside joint range");
  }
  if (obj.kind != JointKind::kFree &&
      std::abs(obj.axis.norm() - 1.0) > 1e-9) {
    throw ConfigError(where + ": axis must be unit length");
  }
  if (obj.kind == JointKind::kRevolute &&
      (obj.lever.norm() <= 0.0 || std::abs(obj.lever.dot(obj.axis)) > 1e-9)) {
    throw ConfigError(where + ": lever must be non-zero and perpendicular");
  }
  if (!(obj.grasp_radius > 0.0)) {
    throw ConfigError(where + ": grasp_radius must be positive");
  }
}

}  // namespace

void ValidateTask(const TaskSpec& task) {
  const std::string where = "task '" + task.name + "'";
  if (!(task.success_threshold > 0.0)) {
    throw ConfigError(where + ": success_threshold must be positive");
  }
  if ((task.workspace.lower.array() >= task.workspace.upper.array()).any()) {
    throw ConfigError(where + ": empty workspace");
  }
  if (task.max_low_level_steps < 1 || task.high_level_horizon < 1) {
    throw ConfigError(where + ": step caps must be >= 1");
  }
  if (task.start_aperture < 0.0 || task.start_aperture > 1.0) {
    throw ConfigError(where + ": start_aperture outside [0, 1]");
  }
  std::set<std::string> ids;
  for (const ObjectInit& init : task.objects) {
    if (!ids.insert(init.object.id).second) {
      throw ConfigError(where + ": duplicate object id '" + init.object.id +
                        "'");
    }
    ValidateObject(init, task);
  }
  if (task.goals.empty()) throw ConfigError(where + ": no goals");
  std::set<std::string> goal_ids;
  for (const Goal& goal : task.goals) {
    const int index = task.ObjectIndex(goal.object_id);
    if (index < 0) {
      throw ConfigError(where + ": goal references unknown object '" +
                        goal.object_id + "'");
    }
    if (goal.qpos.size() != task.objects[index].object.QposDim()) {
      throw ConfigError(where + ": goal dimension mismatch for '" +
                        goal.object_id + "'");
    }
    if (!goal_ids.insert(goal.object_id).second) {
      throw ConfigError(where + ": duplicate goal for '" + goal.object_id +
                        "'");
    }
  }
  for (const std::string& id : task.subtask_order) {
    if (!goal_ids.contains(id)) {
      throw ConfigError(where + ": subtask '" + id + "' has no goal");
    }
  }
}

WorldState Reset(const TaskSpec& task, std::uint64_t seed) {
  ValidateTask(task);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  WorldState world;
  world.robot.pose.position = task.workspace.Clip(task.start_pose.position);
  world.robot.pose.yaw = WrapAngle(task.start_pose.yaw);
  world.robot.aperture = task.start_aperture;
  world.objects.reserve(task.objects.size());
  for (const ObjectInit& init : task.objects) {
    ArticulatedObject obj = init.object;
    for (int i = 0; i < obj.QposDim(); ++i) {
      const double width = init.init_upper[i] - init.init_lower[i];
      const double u = unit(rng);
      obj.qpos[i] = width == 0.0 ? init.init_lower[i]
                                 : init.init_lower[i] + u * width;
    }
    world.objects.push_back(std::move(obj));
  }
  const std::size_t flags =
      task.IsMultiTask() ? task.subtask_order.size() : task.goals.size();
  world.subtask_done.assign(flags, false);
  return world;
}

double GoalDistance(const WorldState& world, const TaskSpec& task,
                    const Goal& goal) {
  const int index = task.ObjectIndex(goal.object_id);
  const ArticulatedObject& obj = world.objects.at(index);
  const double distance = (obj.qpos - goal.qpos).norm();
  if (obj.kind == JointKind::kFree) {
    return distance / task.FreeDistanceScale();
  }
  return distance;
}

bool GoalSatisfied(const WorldState& world, const TaskSpec& task,
                   const Goal& goal) {
  const int index = task.ObjectIndex(goal.object_id);
  const ArticulatedObject& obj = world.objects.at(index);
  const double distance = (obj.qpos - goal.qpos).norm();
  const double threshold = obj.kind == JointKind::kFree
                               ? task.success_threshold *
                                     task.FreeDistanceScale()
                               : task.success_threshold;
  return distance <= threshold;
}

namespace {

const Goal& GoalFor(const TaskSpec& task, const std::string& id) {
  for (const Goal& goal : task.goals) {
    if (goal.object_id == id) return goal;
  }
  throw ConfigError("no goal for subtask '" + id + "'");
}

}  // namespace

RewardSignal SparseReward(WorldState& world, const TaskSpec& task,
                          bool latch) {
  RewardSignal signal;
  if (!task.IsMultiTask()) {
    signal.success = std::all_of(
        task.goals.begin(), task.goals.end(),
        [&](const Goal& goal) { return GoalSatisfied(world, task, goal); });
    signal.reward = signal.success ? 1.0 : 0.0;
    if (latch && signal.success) {
      std::fill(world.subtask_done.begin(), world.subtask_done.end(), true);
    }
    return signal;
  }
  std::vector<bool> done = world.subtask_done;
  for (std::size_t i = 0; i < task.subtask_order.size(); ++i) {
    if (done[i]) continue;
    if (GoalSatisfied(world, task, GoalFor(task, task.subtask_order[i]))) {
      done[i] = true;
      signal.reward = 1.0;
      signal.newly_completed = static_cast<int>(i);
      break;
    }
  }
  signal.success = std::all_of(done.begin(), done.end(),
                               [](bool flag) { return flag; });
  if (latch) world.subtask_done = std::move(done);
  return signal;
}

namespace {

// moves the grasped object along with an end-effector displacement
void Actuate(ArticulatedObject& obj, const Eigen::Vector3d& displacement,
             const Eigen::Vector3d& effector) {
  switch (obj.kind) {
    case JointKind::kPrismatic:
      obj.qpos[0] += displacement.dot(obj.axis);
      break;
    case JointKind::kRevolute: {
      Eigen::Vector3d radial = obj.Handle() - obj.anchor;
      radial -= radial.dot(obj.axis) * obj.axis;
      const Eigen::Vector3d tangent = obj.axis.cross(radial);
      obj.qpos[0] += displacement.dot(tangent) / radial.squaredNorm();
      break;
    }
    case JointKind::kFree:
      obj.qpos.head<3>() = effector;
      break;
  }
  obj.qpos = obj.qpos.cwiseMax(obj.lower).cwiseMin(obj.upper);
}

std::optional<std::size_t> NearestHandle(const WorldState& world,
                                         const Eigen::Vector3d& effector) {
  std::optional<std::size_t> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < world.objects.size(); ++i) {
    const ArticulatedObject& obj = world.objects[i];
    const double distance = (obj.Handle() - effector).norm();
    // strict comparison keeps the earliest declared object on ties
    if (distance <= obj.grasp_radius && distance < best_distance) {
      best = i;
      best_distance = distance;
    }
  }
  return best;
}

}  // namespace

StepResult StepLowLevel(WorldState& world, const TaskSpec& task,
                        const RawAction& action) {
  if (!action.allFinite()) {
    throw InputError("raw action contains non-finite entries");
  }
  const RawAction limits = RawActionLimits();
  const RawAction clipped = action.cwiseMax(-limits).cwiseMin(limits);
  RobotState& robot = world.robot;

  // gripper first, using the pre-motion end-effector position
  const double previous_aperture = robot.aperture;
  robot.aperture =
      std::clamp(robot.aperture - kApertureRate * clipped[4], 0.0, 1.0);
  if (!robot.attached && previous_aperture >= kGraspThreshold &&
      robot.aperture < kGraspThreshold) {
    robot.attached = NearestHandle(world, robot.pose.position);
    if (robot.attached) {
      ArticulatedObject& obj = world.objects[*robot.attached];
      if (obj.kind == JointKind::kFree) {
        obj.qpos.head<3>() = robot.pose.position;
        obj.qpos = obj.qpos.cwiseMax(obj.lower).cwiseMin(obj.upper);
      }
    }
  } else if (robot.attached && previous_aperture < kGraspThreshold &&
             robot.aperture >= kGraspThreshold) {
    robot.attached.reset();
  }

  const Eigen::Vector3d before = robot.pose.position;
  robot.pose.position = task.workspace.Clip(before + clipped.head<3>());
  robot.pose.yaw = WrapAngle(robot.pose.yaw + clipped[3]);
  if (robot.attached) {
    Actuate(world.objects[*robot.attached], robot.pose.position - before,
            robot.pose.position);
  }

  ++world.step_count;
  const RewardSignal signal = SparseReward(world, task);
  StepResult result;
  result.reward = signal.reward;
  result.success = signal.success;
  result.done =
      signal.success || world.step_count >= task.max_low_level_steps;
  return result;
}

int ObservationDim(const TaskSpec& task, ObservationMode mode) {
  int dim = 5;
  for (const ObjectInit& init : task.objects) dim += init.object.QposDim();
  if (task.IsMultiTask()) {
    dim += static_cast<int>(task.objects.size() + task.subtask_order.size());
  }
  if (mode == ObservationMode::kStateGrid) dim += kGridWidth * kGridHeight;
  return dim;
}

namespace {

int GridCell(const Box& box, const Eigen::Vector3d& p) {
  const Eigen::Vector3d extent = box.upper - box.lower;
  const auto cell = [](double value, double lo, double span, int count) {
    const int index = static_cast<int>(std::floor((value - lo) / span * count));
    return std::clamp(index, 0, count - 1);
  };
  const int ix = cell(p.x(), box.lower.x(), extent.x(), kGridWidth);
  const int iy = cell(p.y(), box.lower.y(), extent.y(), kGridHeight);
  return iy * kGridWidth + ix;
}

}  // namespace

Eigen::VectorXd Observe(const WorldState& world, const TaskSpec& task,
                        ObservationMode mode) {
  Eigen::VectorXd obs(ObservationDim(task, mode));
  obs.head<3>() = world.robot.pose.position;
  obs[3] = world.robot.pose.yaw;
  obs[4] = world.robot.aperture;
  int offset = 5;
  for (const ArticulatedObject& obj : world.objects) {
    obs.segment(offset, obj.QposDim()) = obj.qpos;
    offset += obj.QposDim();
  }
  // Sequential scenes need the grasped object and the latched subtasks in
  // the state: both change what the next reward depends on.
  if (task.IsMultiTask()) {
    for (std::size_t i = 0; i < world.objects.size(); ++i) {
      obs[offset++] = world.robot.attached == i ? 1.0 : 0.0;
    }
    for (std::size_t i = 0; i < task.subtask_order.size(); ++i) {
      obs[offset++] = world.subtask_done[i] ? 1.0 : 0.0;
    }
  }
  if (mode == ObservationMode::kStateGrid) {
    auto grid = obs.segment(offset, kGridWidth * kGridHeight);
    grid.setZero();
    // handles 0.5, end-effector 1.0
    for (const ArticulatedObject& obj : world.objects) {
      double& cell = grid[GridCell(task.workspace, obj.Handle())];
      cell = std::max(cell, 0.5);
    }
    grid[GridCell(task.workspace, world.robot.pose.position)] = 1.0;
  }
  return obs;
}

}  // namespace raps::sim
