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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "raps/errors.h"
#include "raps/tasks/catalog.h"

namespace raps::sim {
namespace {

Eigen::VectorXd Scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

// one drawer sliding along +y, handle at the origin when closed
TaskSpec DrawerTask(double init) {
  TaskSpec task;
  task.name = "drawer";
  task.start_pose.position = Eigen::Vector3d(0.0, 0.0, 0.3);
  ObjectInit init_spec;
  ArticulatedObject& drawer = init_spec.object;
  drawer.id = "drawer";
  drawer.kind = JointKind::kPrismatic;
  drawer.axis = Eigen::Vector3d::UnitY();
  drawer.anchor = Eigen::Vector3d(0.0, -init, 0.3);
  drawer.qpos = Scalar(init);
  drawer.lower = Scalar(0.0);
  drawer.upper = Scalar(0.6);
  drawer.grasp_radius = 0.06;
  init_spec.init_lower = Scalar(init);
  init_spec.init_upper = Scalar(init);
  task.objects = {init_spec};
  task.goals = {{"drawer", Scalar(0.0)}};
  return task;
}

RawAction Action(double dx, double dy, double dz, double dyaw, double grip) {
  RawAction a;
  a << dx, dy, dz, dyaw, grip;
  return a;
}

void CloseGripper(WorldState& world, const TaskSpec& task) {
  while (world.robot.aperture > 0.0) {
    StepLowLevel(world, task, Action(0, 0, 0, 0, 1));
  }
}

TEST(ResetTest, SameSeedGivesIdenticalState) {
  const TaskSpec task = tasks::BuiltinCatalog().Get("lift-block");
  EXPECT_EQ(Reset(task, 7), Reset(task, 7));
}

TEST(ResetTest, ZeroWidthRangeGivesMidpoint) {
  const TaskSpec task = DrawerTask(0.25);
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    EXPECT_EQ(Reset(task, seed).objects[0].qpos[0], 0.25);
  }
}

TEST(ResetTest, DoorInitWithinRangeForSeeds1To100) {
  const TaskSpec task = tasks::BuiltinCatalog().Get("open-door");
  const ObjectInit& door = task.objects[0];
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const double q = Reset(task, seed).objects[0].qpos[0];
    EXPECT_GE(q, door.init_lower[0]);
    EXPECT_LE(q, door.init_upper[0]);
  }
}

TEST(ResetTest, UnknownGoalObjectIsConfigError) {
  TaskSpec task = DrawerTask(0.3);
  task.goals = {{"cabinet", Scalar(0.0)}};
  EXPECT_THROW(Reset(task, 0), ConfigError);
  task = DrawerTask(0.3);
  task.success_threshold = 0.0;
  EXPECT_THROW(ValidateTask(task), ConfigError);
}

TEST(StepTest, ZeroActionOnlyAdvancesStepCount) {
  // away from the goal, so nothing latches
  const TaskSpec task = DrawerTask(0.5);
  WorldState world = Reset(task, 0);
  WorldState expected = world;
  const StepResult first = StepLowLevel(world, task, RawAction::Zero());
  expected.step_count = 1;
  EXPECT_EQ(world, expected);
  const StepResult second = StepLowLevel(world, task, RawAction::Zero());
  EXPECT_EQ(first.reward, second.reward);
}

TEST(StepTest, NonFiniteActionRejected) {
  const TaskSpec task = DrawerTask(0.3);
  WorldState world = Reset(task, 0);
  EXPECT_THROW(StepLowLevel(world, task, Action(NAN, 0, 0, 0, 0)),
               InputError);
  EXPECT_THROW(StepLowLevel(world, task, Action(0, 0, 0, 0, INFINITY)),
               InputError);
}

TEST(StepTest, ClosingNearHandleAttaches) {
  const TaskSpec task = DrawerTask(0.3);
  WorldState world = Reset(task, 0);
  int steps = 0;
  while (world.robot.aperture >= kGraspThreshold) {
    EXPECT_FALSE(world.robot.attached.has_value());
    StepLowLevel(world, task, Action(0, 0, 0, 0, 1));
    ++steps;
  }
  // 1.0 -> 0.8 -> 0.6 -> 0.4 crosses 0.5 on the third step
  EXPECT_EQ(steps, 3);
  ASSERT_TRUE(world.robot.attached.has_value());
  EXPECT_EQ(*world.robot.attached, 0u);

  while (world.robot.aperture <= kGraspThreshold) {
    StepLowLevel(world, task, Action(0, 0, 0, 0, -1));
  }
  EXPECT_FALSE(world.robot.attached.has_value());
}

TEST(StepTest, NoAttachWhenHandleOutOfRange) {
  TaskSpec task = DrawerTask(0.3);
  task.start_pose.position.x() = 0.07;
  WorldState world = Reset(task, 0);
  CloseGripper(world, task);
  EXPECT_FALSE(world.robot.attached.has_value());
}

TEST(StepTest, NearestHandleWinsAndTiesGoToFirstDeclared) {
  TaskSpec task = DrawerTask(0.3);
  ObjectInit second = task.objects[0];
  second.object.id = "other";
  task.objects.push_back(second);
  WorldState world = Reset(task, 0);
  CloseGripper(world, task);
  ASSERT_TRUE(world.robot.attached.has_value());
  EXPECT_EQ(*world.robot.attached, 0u);

  task.objects[1].object.anchor.x() = 0.01;
  task.objects[0].object.anchor.x() = 0.02;
  world = Reset(task, 0);
  CloseGripper(world, task);
  ASSERT_TRUE(world.robot.attached.has_value());
  EXPECT_EQ(*world.robot.attached, 1u);
}

TEST(StepTest, AttachedPrismaticFollowsProjection) {
  const TaskSpec task = DrawerTask(0.3);
  WorldState world = Reset(task, 0);
  CloseGripper(world, task);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const RawAction action = Action(u(rng), u(rng), u(rng), 0, 1);
    const Eigen::Vector3d before = world.robot.pose.position;
    const double q_before = world.objects[0].qpos[0];
    StepLowLevel(world, task, action);
    const Eigen::Vector3d moved = world.robot.pose.position - before;
    const double expected =
        std::clamp(q_before + moved.dot(Eigen::Vector3d::UnitY()), 0.0, 0.6);
    EXPECT_NEAR(world.objects[0].qpos[0], expected, 1e-12);
  }
}

TEST(StepTest, AttachedRevoluteKeepsHandleOnArc) {
  const TaskSpec task = tasks::BuiltinCatalog().Get("open-door");
  WorldState world = Reset(task, 5);
  const ArticulatedObject& door = world.objects[0];
  world.robot.pose.position = door.Handle();
  CloseGripper(world, task);
  ASSERT_TRUE(world.robot.attached.has_value());
  const double radius = door.lever.norm();
  double previous = world.objects[0].qpos[0];
  // five steps keep the end-effector inside the workspace
  for (int i = 0; i < 5; ++i) {
    StepLowLevel(world, task, Action(0, 1, 0, 0, 1));
    const Eigen::Vector3d radial = world.objects[0].Handle() - door.anchor;
    EXPECT_NEAR(radial.norm(), radius, 1e-12);
    // pushing +y swings the door open from its small initial angle
    EXPECT_GT(world.objects[0].qpos[0], previous);
    previous = world.objects[0].qpos[0];
  }
}

TEST(RewardTest, ExactGoalGivesOne) {
  TaskSpec task = DrawerTask(0.0);
  WorldState world = Reset(task, 0);
  EXPECT_EQ(SparseReward(world, task).reward, 1.0);
}

TEST(RewardTest, DistancePointThreeOneGivesZero) {
  TaskSpec task = DrawerTask(0.31);
  WorldState world = Reset(task, 0);
  EXPECT_EQ(SparseReward(world, task).reward, 0.0);
  task = DrawerTask(0.3);
  world = Reset(task, 0);
  EXPECT_EQ(SparseReward(world, task).reward, 1.0);
}

TEST(RewardTest, ThresholdPropertyOverRandomPairs) {
  TaskSpec task = DrawerTask(0.3);
  task.objects[0].object.lower = Scalar(-10.0);
  task.objects[0].object.upper = Scalar(10.0);
  WorldState world = Reset(task, 0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const double q = u(rng);
    const double g = u(rng);
    world.objects[0].qpos[0] = q;
    task.goals[0].qpos[0] = g;
    const double expected = std::abs(q - g) <= 0.3 ? 1.0 : 0.0;
    ASSERT_EQ(SparseReward(world, task, false).reward, expected)
        << "q=" << q << " goal=" << g;
  }
}

TEST(RewardTest, FreeObjectUsesWorkspaceScale) {
  const TaskSpec task = tasks::BuiltinCatalog().Get("lift-block");
  // unit cube workspace: mean half extent 0.5
  EXPECT_DOUBLE_EQ(task.FreeDistanceScale(), 0.5);
  WorldState world = Reset(task, 0);
  world.objects[0].qpos = task.goals[0].qpos;
  world.objects[0].qpos.z() -= 0.149;
  EXPECT_EQ(SparseReward(world, task, false).reward, 1.0);
  world.objects[0].qpos.z() -= 0.002;
  EXPECT_EQ(SparseReward(world, task, false).reward, 0.0);
}

TEST(RewardTest, MultiTaskSubtaskRewardedOnce) {
  const TaskSpec task = tasks::BuiltinCatalog().Get("multi-task-a");
  WorldState world = Reset(task, 0);
  const int drawer = task.ObjectIndex("drawer");
  const double open = world.objects[drawer].qpos[0];
  double total = 0.0;
  for (int step = 0; step < 60; ++step) {
    // satisfied at steps 10 and 50, unsatisfied between
    world.objects[drawer].qpos[0] = (step == 10 || step == 50) ? 0.0 : open;
    const RewardSignal signal = SparseReward(world, task);
    total += signal.reward;
    EXPECT_TRUE(signal.reward == 0.0 || signal.reward == 1.0);
  }
  EXPECT_EQ(total, 1.0);
  EXPECT_TRUE(world.subtask_done[0]);
}

TEST(RewardTest, MultiTaskLatchesOneSubtaskPerEvaluation) {
  const TaskSpec task = tasks::BuiltinCatalog().Get("multi-task-a");
  WorldState world = Reset(task, 0);
  for (const Goal& goal : task.goals) {
    world.objects[task.ObjectIndex(goal.object_id)].qpos = goal.qpos;
  }
  double total = 0.0;
  for (int i = 0; i < 6; ++i) {
    const RewardSignal signal = SparseReward(world, task);
    total += signal.reward;
    if (i < 4) EXPECT_EQ(signal.newly_completed, i);
  }
  EXPECT_EQ(total, 4.0);
  EXPECT_TRUE(SparseReward(world, task).success);
}

TEST(ObserveTest, LiftBlockStateDimension) {
  const TaskSpec task = tasks::BuiltinCatalog().Get("lift-block");
  EXPECT_EQ(ObservationDim(task, ObservationMode::kState), 8);
  const WorldState world = Reset(task, 1);
  const Eigen::VectorXd obs = Observe(world, task, ObservationMode::kState);
  ASSERT_EQ(obs.size(), 8);
  EXPECT_EQ(obs, Observe(world, task, ObservationMode::kState));
  EXPECT_EQ(obs.head<3>(), world.robot.pose.position);
  EXPECT_EQ(obs[4], world.robot.aperture);
  EXPECT_EQ(obs.tail<3>(), world.objects[0].qpos);
}

TEST(ObserveTest, MultiTaskAppendsAttachmentAndLatchFlags) {
  const TaskSpec task = tasks::BuiltinCatalog().Get("multi-task-a");
  // 5 + drawer 1 + switch 1 + block 3 + door 1, then 4 + 4 flags
  EXPECT_EQ(ObservationDim(task, ObservationMode::kState), 19);
  WorldState world = Reset(task, 0);
  world.robot.attached = 1;
  world.subtask_done[2] = true;
  const Eigen::VectorXd obs = Observe(world, task, ObservationMode::kState);
  Eigen::VectorXd flags(8);
  flags << 0, 1, 0, 0, 0, 0, 1, 0;
  EXPECT_EQ(obs.tail<8>(), flags);
}

TEST(ObserveTest, GridMarksCenterCellForCenteredEndEffector) {
  TaskSpec task = DrawerTask(0.3);
  task.start_pose.position = Eigen::Vector3d(0.0, 0.0, 0.5);
  task.objects[0].object.anchor = Eigen::Vector3d(-0.45, -0.75, 0.3);
  const WorldState world = Reset(task, 0);
  const Eigen::VectorXd obs = Observe(world, task, ObservationMode::kStateGrid);
  ASSERT_EQ(obs.size(), 6 + 81);
  const Eigen::VectorXd grid = obs.tail(81);
  // 9x9 over [-0.5, 0.5]^2: x = y = 0 falls in column 4, row 4
  EXPECT_EQ(grid[4 * 9 + 4], 1.0);
  // handle at (-0.45, -0.45) falls in the corner cell
  EXPECT_EQ(grid[0], 0.5);
  EXPECT_EQ(grid.sum(), 1.5);
}

TEST(PropertyTest, FuzzedStepsRespectBoundsAndAttachment) {
  const tasks::TaskCatalog catalog = tasks::BuiltinCatalog();
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> n(0.0, 1.5);
  std::int64_t total_steps = 0;
  for (const std::string& name : catalog.Names()) {
    const TaskSpec& task = catalog.Get(name);
    for (int episode = 0; episode < 8; ++episode) {
      WorldState world = Reset(task, rng());
      std::vector<bool> latched = world.subtask_done;
      double episode_return = 0.0;
      for (int t = 0; t < task.max_low_level_steps; ++t) {
        RawAction action;
        for (int i = 0; i < kRawActionDim; ++i) action[i] = n(rng);
        const StepResult result = StepLowLevel(world, task, action);
        ++total_steps;
        ASSERT_TRUE(result.reward == 0.0 || result.reward == 1.0);
        episode_return += result.reward;
        ASSERT_TRUE(task.workspace.Contains(world.robot.pose.position));
        ASSERT_GE(world.robot.aperture, 0.0);
        ASSERT_LE(world.robot.aperture, 1.0);
        ASSERT_LE(std::abs(world.robot.pose.yaw), M_PI);
        for (const ArticulatedObject& obj : world.objects) {
          ASSERT_TRUE((obj.qpos.array() >= obj.lower.array() - 1e-12).all());
          ASSERT_TRUE((obj.qpos.array() <= obj.upper.array() + 1e-12).all());
        }
        if (world.robot.attached) {
          const ArticulatedObject& held = world.objects[*world.robot.attached];
          if (held.kind == JointKind::kFree) {
            ASSERT_LE((held.Handle() - world.robot.pose.position).norm(),
                      1e-12);
          }
        }
        for (std::size_t i = 0; i < latched.size(); ++i) {
          if (latched[i]) ASSERT_TRUE(world.subtask_done[i]);
        }
        latched = world.subtask_done;
        if (result.done) break;
      }
      if (task.IsMultiTask()) {
        ASSERT_LE(episode_return, task.subtask_order.size());
      }
    }
  }
  // keep going on the cheapest task until the step floor is met
  const TaskSpec& task = catalog.Get("lift-block");
  while (total_steps < 100000) {
    WorldState world = Reset(task, rng());
    for (int t = 0; t < task.max_low_level_steps; ++t) {
      RawAction action;
      for (int i = 0; i < kRawActionDim; ++i) action[i] = n(rng);
      const StepResult result = StepLowLevel(world, task, action);
      ++total_steps;
      ASSERT_TRUE(task.workspace.Contains(world.robot.pose.position));
      ASSERT_GE(world.robot.aperture, 0.0);
      ASSERT_LE(world.robot.aperture, 1.0);
      if (world.robot.attached) {
        ASSERT_LE((world.objects[0].Handle() - world.robot.pose.position)
                      .norm(),
                  1e-12);
      }
      if (result.done) break;
    }
  }
  EXPECT_GE(total_steps, 100000);
}

TEST(PropertyTest, TrajectoryIsBitwiseReproducible) {
  const TaskSpec task = tasks::BuiltinCatalog().Get("open-door");
  const auto run = [&task] {
    WorldState world = Reset(task, 42);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<WorldState> states;
    for (int t = 0; t < 200; ++t) {
      RawAction action;
      for (int i = 0; i < kRawActionDim; ++i) action[i] = n(rng);
      StepLowLevel(world, task, action);
      states.push_back(world);
    }
    return states;
  };
  EXPECT_EQ(run(), run());
}

TEST(WrapAngleTest, MapsIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(WrapAngle(0.5), 0.5);
  EXPECT_NEAR(WrapAngle(3 * M_PI / 2), -M_PI / 2, 1e-12);
  EXPECT_NEAR(WrapAngle(-3 * M_PI / 2), M_PI / 2, 1e-12);
}

}  // namespace
}  // namespace raps::sim
