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

#include <random>

#include "raps/errors.h"
#include "raps/pamdp/environment.h"
#include "raps/pamdp/hybrid_action.h"
#include "raps/tasks/catalog.h"

namespace raps::pamdp {
namespace {

using primitives::DefaultLibrary;
using primitives::DofMode;

Eigen::VectorXd Iota(int n) {
  return Eigen::VectorXd::LinSpaced(n, 0.0, n - 1.0);
}

TEST(DecodeTest, TenPrimitivesOfThreeArgs) {
  const HybridActionLayout layout(std::vector<int>(10, 3));
  EXPECT_EQ(layout.TotalDim(), 40);
  HybridAction action;
  action.one_hot = Eigen::VectorXd::Zero(10);
  action.one_hot[0] = 1.0;
  action.full_args = Iota(30);
  const DecodedAction decoded = Decode(action, layout);
  EXPECT_EQ(decoded.primitive, 0);
  EXPECT_EQ(decoded.args, Iota(3));

  action.one_hot.setZero();
  action.one_hot[7] = 1.0;
  EXPECT_EQ(Decode(action, layout).args, action.full_args.segment(21, 3));
}

TEST(DecodeTest, SinglePrimitiveTakesEverything) {
  const HybridActionLayout layout({5});
  HybridAction action{Eigen::VectorXd::Ones(1), Iota(5)};
  const DecodedAction decoded = Decode(action, layout);
  EXPECT_EQ(decoded.primitive, 0);
  EXPECT_EQ(decoded.args, action.full_args);
}

TEST(DecodeTest, DefaultLibraryLayout) {
  const HybridActionLayout layout =
      HybridActionLayout::FromLibrary(DefaultLibrary(DofMode::kPositionOnly));
  EXPECT_EQ(layout.NumPrimitives(), 11);
  EXPECT_EQ(layout.TotalDim(), 28);
  EXPECT_EQ(layout.ArgOffset(8), 8);   // go-to-pose-delta after 8 scalars
  EXPECT_EQ(layout.ArgOffset(9), 11);  // top-grasp
  EXPECT_EQ(layout.ArgOffset(10), 15);
}

TEST(DecodeTest, MalformedSelectorsRejected) {
  const HybridActionLayout layout({1, 2});
  HybridAction action{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(3)};
  EXPECT_THROW(Decode(action, layout), InputError);  // no ones
  action.one_hot << 1, 1;
  EXPECT_THROW(Decode(action, layout), InputError);  // two ones
  action.one_hot << 0.5, 0.5;
  EXPECT_THROW(Decode(action, layout), InputError);
  action.one_hot << 0, 1;
  action.full_args[1] = NAN;
  EXPECT_THROW(Decode(action, layout), InputError);
  action.full_args = Eigen::VectorXd::Zero(4);
  EXPECT_THROW(Decode(action, layout), InputError);
}

TEST(LayoutTest, InvalidDimsRejected) {
  EXPECT_THROW(HybridActionLayout(std::vector<int>{}), InputError);
  EXPECT_THROW(HybridActionLayout({2, 0}), InputError);
}

TEST(RoundTripTest, EncodeDecodeIdentity) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n(0.0, 2.0);
  const HybridActionLayout layout =
      HybridActionLayout::FromLibrary(DefaultLibrary(DofMode::kPositionYaw));
  for (int trial = 0; trial < 100000; ++trial) {
    const int k = static_cast<int>(rng() % layout.NumPrimitives());
    Eigen::VectorXd args(layout.ArgDim(k));
    for (int i = 0; i < args.size(); ++i) args[i] = n(rng);
    const HybridAction action = Encode(k, args, layout, n(rng));
    const DecodedAction decoded = Decode(action, layout);
    ASSERT_EQ(decoded.primitive, k);
    ASSERT_EQ(decoded.args, args);
  }
}

TEST(RoundTripTest, SlicesAreDisjointAndCovering) {
  const HybridActionLayout layout =
      HybridActionLayout::FromLibrary(DefaultLibrary(DofMode::kPositionYaw));
  std::vector<int> owner(layout.TotalArgDim(), -1);
  for (int k = 0; k < layout.NumPrimitives(); ++k) {
    for (int i = 0; i < layout.ArgDim(k); ++i) {
      ASSERT_EQ(owner[layout.ArgOffset(k) + i], -1);
      owner[layout.ArgOffset(k) + i] = k;
    }
  }
  for (int o : owner) EXPECT_GE(o, 0);
}

TEST(DiscountTest, OneMinusInverseHorizon) {
  EXPECT_EQ(DiscountForHorizon(5), 0.8);
  EXPECT_EQ(DiscountForHorizon(15), 14.0 / 15.0);
  EXPECT_EQ(DiscountForHorizon(1), 0.0);
  EXPECT_THROW(DiscountForHorizon(0), InputError);
}

TEST(EnvironmentTest, ZeroDummyActionOnlyAdvancesSteps) {
  const sim::TaskSpec task = tasks::BuiltinCatalog().Get("open-door");
  Environment env(task, DefaultLibrary(DofMode::kPositionOnly),
                  ActionMode::kRaps);
  const Eigen::VectorXd obs = env.Reset(4);
  const int k = env.library().IndexOf(primitives::kDummyPrimitive);
  const StepOutput out = env.StepPrimitive(k, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(out.observation, obs);
  EXPECT_EQ(out.reward, 0.0);
  EXPECT_EQ(out.info.low_level_steps, 30);
  EXPECT_EQ(env.world().step_count, 30);
  EXPECT_EQ(env.high_level_steps(), 1);
}

TEST(EnvironmentTest, StepMatchesStepPrimitive) {
  const sim::TaskSpec task = tasks::BuiltinCatalog().Get("lift-block");
  const auto library = DefaultLibrary(DofMode::kPositionOnly);
  Environment a(task, library, ActionMode::kRaps);
  Environment b(task, library, ActionMode::kRaps);
  a.Reset(2);
  b.Reset(2);
  Eigen::VectorXd args(1);
  args << 0.8;
  const StepOutput oa = a.Step(Encode(2, args, a.layout(), 5.0));
  const StepOutput ob = b.StepPrimitive(2, args);
  EXPECT_EQ(oa.observation, ob.observation);
  EXPECT_EQ(a.world(), b.world());
  EXPECT_EQ(oa.info.primitive, 2);
}

TEST(EnvironmentTest, EpisodeAccountingMatchesSimulator) {
  const tasks::TaskCatalog catalog = tasks::BuiltinCatalog();
  const auto library = DefaultLibrary(DofMode::kPositionOnly);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n(0.0, 1.0);
  for (const std::string& name : catalog.Names()) {
    const sim::TaskSpec& task = catalog.Get(name);
    Environment env(task, library, ActionMode::kRaps);
    for (int episode = 0; episode < 20; ++episode) {
      env.Reset(rng());
      std::int64_t total = 0;
      while (!env.episode_done()) {
        const int k = static_cast<int>(rng() % library.Size());
        Eigen::VectorXd args(library[k].ArgDim());
        for (int i = 0; i < args.size(); ++i) args[i] = n(rng);
        total += env.StepPrimitive(k, args).info.low_level_steps;
      }
      ASSERT_EQ(total, env.world().step_count);
      ASSERT_EQ(total, env.episode_low_level_steps());
      ASSERT_LE(env.high_level_steps(), task.high_level_horizon);
      ASSERT_LE(total, static_cast<std::int64_t>(task.high_level_horizon) *
                           library.MaxHorizon());
    }
  }
}

TEST(EnvironmentTest, RawModeIsTheSimulator) {
  const sim::TaskSpec task = tasks::BuiltinCatalog().Get("close-drawer");
  Environment env(task, DefaultLibrary(DofMode::kPositionOnly),
                  ActionMode::kRaw);
  EXPECT_EQ(env.layout(), HybridActionLayout({5}));
  env.Reset(77);
  sim::WorldState world = sim::Reset(task, 77);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 0.05);
  while (!env.episode_done()) {
    sim::RawAction action;
    for (int i = 0; i < 5; ++i) action[i] = n(rng);
    const StepOutput out = env.StepRaw(action);
    const sim::StepResult direct = sim::StepLowLevel(world, task, action);
    ASSERT_EQ(env.world(), world);
    ASSERT_EQ(out.reward, direct.reward);
    ASSERT_EQ(out.done, direct.done);
    ASSERT_EQ(out.observation,
              sim::Observe(world, task, sim::ObservationMode::kState));
  }
  EXPECT_EQ(env.world().step_count, task.max_low_level_steps);
}

TEST(EnvironmentTest, WrongModeAndLifecycleErrors) {
  const sim::TaskSpec task = tasks::BuiltinCatalog().Get("lift-block");
  const auto library = DefaultLibrary(DofMode::kPositionOnly);
  Environment raps(task, library, ActionMode::kRaps);
  EXPECT_THROW(raps.StepPrimitive(0, Eigen::VectorXd::Zero(1)), InputError);
  raps.Reset(0);
  EXPECT_THROW(raps.StepRaw(sim::RawAction::Zero()), InputError);
  EXPECT_THROW(raps.StepPrimitive(11, Eigen::VectorXd::Zero(1)), InputError);
  for (int i = 0; i < task.high_level_horizon; ++i) {
    raps.StepPrimitive(0, Eigen::VectorXd::Zero(1));
  }
  EXPECT_TRUE(raps.episode_done());
  EXPECT_THROW(raps.StepPrimitive(0, Eigen::VectorXd::Zero(1)), InputError);

  Environment raw(task, library, ActionMode::kRaw);
  raw.Reset(0);
  EXPECT_THROW(raw.StepPrimitive(0, Eigen::VectorXd::Zero(1)), InputError);
  EXPECT_EQ(ParseActionMode("raw"), ActionMode::kRaw);
  EXPECT_THROW(ParseActionMode("torque"), ConfigError);
}

}  // namespace
}  // namespace raps::pamdp
