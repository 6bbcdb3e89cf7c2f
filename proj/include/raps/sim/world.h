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

#ifndef RAPS_SIM_WORLD_H_
#define RAPS_SIM_WORLD_H_

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace raps::sim {

// Deterministic kinematic world: a point end-effector with a parallel
// gripper acting on articulated objects. No forces, no contacts; joints only
// move while the gripper holds their handle.

// low-level control limits
inline constexpr double kMaxTranslationStep = 0.05;  // meters per step
inline constexpr double kMaxYawStep = 0.1;           // radians per step
inline constexpr double kApertureRate = 0.2;         // aperture units per step
inline constexpr double kGraspThreshold = 0.5;
inline constexpr double kDefaultGraspRadius = 0.06;
inline constexpr double kDefaultSuccessThreshold = 0.3;

// raw action layout: (dx, dy, dz, dyaw, grip); grip > 0 closes
inline constexpr int kRawActionDim = 5;
using RawAction = Eigen::Matrix<double, kRawActionDim, 1>;

// per-component step caps for the raw action
RawAction RawActionLimits();

double WrapAngle(double angle);

struct Box {
  Eigen::Vector3d lower = Eigen::Vector3d(-0.5, -0.5, 0.0);
  Eigen::Vector3d upper = Eigen::Vector3d(0.5, 0.5, 1.0);

  Eigen::Vector3d Clip(const Eigen::Vector3d& p) const {
    return p.cwiseMax(lower).cwiseMin(upper);
  }
  bool Contains(const Eigen::Vector3d& p) const {
    return (p.array() >= lower.array()).all() &&
           (p.array() <= upper.array()).all();
  }
  Eigen::Vector3d Center() const { return 0.5 * (lower + upper); }
  Eigen::Vector3d HalfExtent() const { return 0.5 * (upper - lower); }
};

struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double yaw = 0.0;

  bool operator==(const Pose&) const = default;
};

struct RobotState {
  Pose pose;
  double aperture = 1.0;               // 1 = fully open
  std::optional<std::size_t> attached;  // index into WorldState::objects

  bool operator==(const RobotState&) const = default;
};

enum class JointKind { kPrismatic, kRevolute, kFree };

const char* JointKindName(JointKind kind);
JointKind ParseJointKind(const std::string& name);

struct ArticulatedObject {
  std::string id;
  JointKind kind = JointKind::kPrismatic;
  // prismatic: slide direction; revolute: hinge axis. unit length.
  Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
  // prismatic: handle position at qpos = 0; revolute: point on the hinge
  Eigen::Vector3d anchor = Eigen::Vector3d::Zero();
  // revolute: hinge-to-handle vector at qpos = 0, perpendicular to axis
  Eigen::Vector3d lever = Eigen::Vector3d::UnitX();
  // size 1 for prismatic/revolute, 3 for free objects
  Eigen::VectorXd qpos = Eigen::VectorXd::Zero(1);
  Eigen::VectorXd lower = Eigen::VectorXd::Zero(1);
  Eigen::VectorXd upper = Eigen::VectorXd::Ones(1);
  double grasp_radius = kDefaultGraspRadius;

  // world position of the graspable point, continuous in qpos
  Eigen::Vector3d Handle() const;
  int QposDim() const { return kind == JointKind::kFree ? 3 : 1; }

  bool operator==(const ArticulatedObject&) const = default;
};

struct ObjectInit {
  ArticulatedObject object;
  // initial qpos ~ U[init_lower, init_upper] per component
  Eigen::VectorXd init_lower;
  Eigen::VectorXd init_upper;
};

struct Goal {
  std::string object_id;
  Eigen::VectorXd qpos;
};

struct TaskSpec {
  std::string name;
  Box workspace;
  Pose start_pose;
  double start_aperture = 1.0;
  std::vector<ObjectInit> objects;
  std::vector<Goal> goals;
  // joint-space threshold; free objects scale it by FreeDistanceScale()
  double success_threshold = kDefaultSuccessThreshold;
  // non-empty => sequential multi-task: object ids, each rewarded once
  std::vector<std::string> subtask_order;
  int max_low_level_steps = 250;
  int high_level_horizon = 5;

  bool IsMultiTask() const { return !subtask_order.empty(); }
  // meters per normalized unit: mean half-extent of the workspace
  double FreeDistanceScale() const;
  // primitive argument scale (meters per normalized unit) per axis
  Eigen::Vector3d ArgScale() const { return workspace.HalfExtent(); }
  int ObjectIndex(const std::string& id) const;  // -1 if absent
};

// throws ConfigError when the task is malformed
void ValidateTask(const TaskSpec& task);

struct WorldState {
  RobotState robot;
  std::vector<ArticulatedObject> objects;
  std::int64_t step_count = 0;
  // latched per subtask (multi-task) or per goal (single-task)
  std::vector<bool> subtask_done;

  bool operator==(const WorldState&) const = default;
};

WorldState Reset(const TaskSpec& task, std::uint64_t seed);

struct RewardSignal {
  double reward = 0.0;   // 0 or 1
  bool success = false;  // single: goals hold now; multi: all latched
  int newly_completed = -1;  // subtask index latched by this evaluation
};

// distance of one goal's object to its target in task units
double GoalDistance(const WorldState& world, const TaskSpec& task,
                    const Goal& goal);
bool GoalSatisfied(const WorldState& world, const TaskSpec& task,
                   const Goal& goal);

// Evaluates the sparse reward of the current state. Multi-task tasks latch
// at most one pending subtask per call (first in subtask_order), so the
// reward stays in {0, 1}; pass latch = false to peek without mutating.
RewardSignal SparseReward(WorldState& world, const TaskSpec& task,
                          bool latch = true);

struct StepResult {
  double reward = 0.0;
  bool done = false;
  bool success = false;
};

// one raw control step; throws InputError on non-finite entries
StepResult StepLowLevel(WorldState& world, const TaskSpec& task,
                        const RawAction& action);

enum class ObservationMode { kState, kStateGrid };

inline constexpr int kGridWidth = 9;
inline constexpr int kGridHeight = 9;

// Layout: position(3), yaw, aperture, every object's qpos in declaration
// order; multi-task specs then add one attached flag per object and one
// latch flag per subtask; kStateGrid appends the 9x9 occupancy grid.
int ObservationDim(const TaskSpec& task, ObservationMode mode);
Eigen::VectorXd Observe(const WorldState& world, const TaskSpec& task,
                        ObservationMode mode);

}  // namespace raps::sim

#endif  // RAPS_SIM_WORLD_H_
