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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "raps/errors.h"
#include "raps/pamdp/environment.h"
#include "raps/tasks/catalog.h"
#include "tasks/scripts.h"

namespace raps::tasks {
namespace {

using primitives::DefaultLibrary;
using primitives::DofMode;

using testing::RunRaw;
using testing::RunScript;
using testing::Script;
using testing::ScriptOutcome;
using testing::Scripts;
using testing::ToWaypoints;

TEST(CatalogTest, BuiltinNames) {
  const TaskCatalog catalog = BuiltinCatalog();
  EXPECT_EQ(catalog.Size(), 8u);
  for (const std::string& name : BuiltinSingleTasks()) {
    ASSERT_TRUE(catalog.Contains(name)) << name;
    EXPECT_FALSE(catalog.Get(name).IsMultiTask());
    EXPECT_EQ(catalog.Get(name).high_level_horizon, 5);
    EXPECT_EQ(catalog.Get(name).max_low_level_steps, 250);
  }
  for (const char* name : {"multi-task-a", "multi-task-b"}) {
    const sim::TaskSpec& task = catalog.Get(name);
    EXPECT_EQ(task.subtask_order.size(), 4u);
    EXPECT_EQ(task.high_level_horizon, 15);
  }
  EXPECT_THROW(catalog.Get("stack-blocks"), ConfigError);
}

TEST(CatalogTest, JsonRoundTrip) {
  const TaskCatalog catalog = BuiltinCatalog();
  for (const std::string& name : catalog.Names()) {
    const nlohmann::json j = TaskToJson(catalog.Get(name));
    const sim::TaskSpec back = TaskFromJson(j);
    EXPECT_EQ(TaskToJson(back), j) << name;
    EXPECT_EQ(sim::Reset(back, 9), sim::Reset(catalog.Get(name), 9)) << name;
  }
}

TEST(CatalogTest, MalformedJsonRejected) {
  nlohmann::json j = TaskToJson(BuiltinCatalog().Get("open-door"));
  j["goals"][0]["object"] = "window";
  EXPECT_THROW(TaskFromJson(j), ConfigError);
  j = TaskToJson(BuiltinCatalog().Get("open-door"));
  j.erase("objects");
  EXPECT_THROW(TaskFromJson(j), ConfigError);
}

TEST(CatalogTest, NoTaskStartsSolved) {
  const TaskCatalog catalog = BuiltinCatalog();
  for (const std::string& name : catalog.Names()) {
    const sim::TaskSpec& task = catalog.Get(name);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      sim::WorldState world = sim::Reset(task, seed);
      EXPECT_EQ(sim::SparseReward(world, task, false).reward, 0.0) << name;
    }
  }
}

TEST(SolvabilityTest, SingleTasksWithinFivePrimitives) {
  const TaskCatalog catalog = BuiltinCatalog();
  for (const std::string& name : BuiltinSingleTasks()) {
    const Script& script = Scripts().at(name);
    ASSERT_LE(script.size(), 5u);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const ScriptOutcome outcome = RunScript(catalog.Get(name), script, seed);
      EXPECT_TRUE(outcome.success) << name << " seed " << seed;
      EXPECT_EQ(outcome.total_return, 1.0) << name << " seed " << seed;
    }
  }
}

TEST(SolvabilityTest, DoorOpensForSeeds1To100) {
  const sim::TaskSpec task = BuiltinCatalog().Get("open-door");
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ScriptOutcome outcome =
        RunScript(task, Scripts().at("open-door"), seed);
    EXPECT_TRUE(outcome.success) << "seed " << seed;
  }
}

TEST(SolvabilityTest, MultiTaskChainsEarnEverySubtask) {
  const TaskCatalog catalog = BuiltinCatalog();
  for (const char* name : {"multi-task-a", "multi-task-b"}) {
    const sim::TaskSpec& task = catalog.Get(name);
    const Script& script = Scripts().at(name);
    ASSERT_LE(static_cast<int>(script.size()), task.high_level_horizon);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const ScriptOutcome outcome = RunScript(task, script, seed);
      EXPECT_EQ(outcome.total_return, 4.0) << name << " seed " << seed;
      EXPECT_TRUE(outcome.success) << name << " seed " << seed;
    }
  }
}

TEST(SolvabilityTest, PartialChainEarnsPartialReturn) {
  const sim::TaskSpec task = BuiltinCatalog().Get("multi-task-a");
  Script script = Scripts().at("multi-task-a");
  script.resize(6);  // drawer and switch only
  const ScriptOutcome outcome = RunScript(task, script, 3);
  EXPECT_EQ(outcome.total_return, 2.0);
  EXPECT_FALSE(outcome.success);
}

TEST(SolvabilityTest, RawControlFollowsEveryScript) {
  const TaskCatalog catalog = BuiltinCatalog();
  for (const std::string& name : catalog.Names()) {
    const sim::TaskSpec& task = catalog.Get(name);
    const auto path = ToWaypoints(task, Scripts().at(name));
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const ScriptOutcome outcome = RunRaw(task, path, seed);
      EXPECT_TRUE(outcome.success) << name << " seed " << seed;
      EXPECT_EQ(outcome.total_return, task.IsMultiTask() ? 4.0 : 1.0)
          << name << " seed " << seed;
    }
  }
}

TEST(SolvabilityTest, RawDoorOpensForSeeds1To100) {
  const sim::TaskSpec task = BuiltinCatalog().Get("open-door");
  const auto path = ToWaypoints(task, Scripts().at("open-door"));
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    EXPECT_TRUE(RunRaw(task, path, seed).success) << "seed " << seed;
  }
}

TEST(RewardTest, DrawerStartingClosedPaysOnFirstStep) {
  sim::TaskSpec task = BuiltinCatalog().Get("close-drawer");
  task.objects[0].init_lower[0] = 0.0;
  task.objects[0].init_upper[0] = 0.0;
  const auto library = DefaultLibrary(DofMode::kPositionOnly);
  pamdp::Environment env(task, library, pamdp::ActionMode::kRaps);
  env.Reset(0);
  const pamdp::StepOutput out = env.StepPrimitive(
      library.IndexOf(primitives::kDummyPrimitive), Eigen::VectorXd::Zero(3));
  EXPECT_EQ(out.reward, 1.0);
  EXPECT_TRUE(out.done);
  // success ends the primitive on its first low-level step
  EXPECT_EQ(out.info.low_level_steps, 1);
}

}  // namespace
}  // namespace raps::tasks
