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

#ifndef RAPS_PAMDP_ENVIRONMENT_H_
#define RAPS_PAMDP_ENVIRONMENT_H_

#include <Eigen/Dense>

#include <cstdint>
#include <string>

#include "raps/pamdp/hybrid_action.h"
#include "raps/primitives/executor.h"
#include "raps/primitives/library.h"
#include "raps/sim/world.h"

namespace raps::pamdp {

enum class ActionMode { kRaps, kRaw };

const char* ActionModeName(ActionMode mode);
ActionMode ParseActionMode(const std::string& name);

struct StepInfo {
  int primitive = -1;  // -1 in raw mode
  Eigen::VectorXd args;  // clipped args actually executed
  primitives::ExecutionTrace trace;  // empty in raw mode
  int low_level_steps = 0;
  bool success = false;
};

struct StepOutput {
  Eigen::VectorXd observation;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

// Gym-style wrapper around one simulator instance. In RAPS mode each Step
// runs a whole primitive and an episode lasts task.high_level_horizon
// primitive calls (or until the simulator reports done). In raw mode the
// 5-vector low-level interface is passed through untouched.
class Environment {
 public:
  Environment(sim::TaskSpec task, primitives::PrimitiveLibrary library,
              ActionMode mode,
              sim::ObservationMode obs_mode = sim::ObservationMode::kState);

  Eigen::VectorXd Reset(std::uint64_t seed);

  // RAPS mode only
  StepOutput Step(const HybridAction& action);
  // decoded form of Step
  StepOutput StepPrimitive(int primitive, const Eigen::VectorXd& args);
  // raw mode only
  StepOutput StepRaw(const sim::RawAction& action);

  int ObservationDim() const;
  Eigen::VectorXd Observation() const;
  const HybridActionLayout& layout() const { return layout_; }
  const primitives::PrimitiveLibrary& library() const { return library_; }
  const sim::TaskSpec& task() const { return task_; }
  const sim::WorldState& world() const { return world_; }
  ActionMode mode() const { return mode_; }
  bool episode_done() const { return done_; }
  int high_level_steps() const { return high_level_steps_; }
  // sum of StepInfo::low_level_steps this episode
  std::int64_t episode_low_level_steps() const { return low_level_steps_; }

 private:
  void CheckStepAllowed(ActionMode required) const;

  sim::TaskSpec task_;
  primitives::PrimitiveLibrary library_;
  HybridActionLayout layout_;
  ActionMode mode_;
  sim::ObservationMode obs_mode_;
  sim::WorldState world_;
  bool has_episode_ = false;
  bool done_ = false;
  int high_level_steps_ = 0;
  std::int64_t low_level_steps_ = 0;
};

}  // namespace raps::pamdp

#endif  // RAPS_PAMDP_ENVIRONMENT_H_
