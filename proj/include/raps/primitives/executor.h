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

#ifndef RAPS_PRIMITIVES_EXECUTOR_H_
#define RAPS_PRIMITIVES_EXECUTOR_H_

#include <Eigen/Dense>

#include <vector>

#include "raps/primitives/primitive.h"
#include "raps/sim/world.h"

namespace raps::primitives {

struct ExecutionTrace {
  int horizon = 0;
  int low_level_steps_used = 0;
  std::vector<double> errors;            // |e_i| before each step
  std::vector<sim::RawAction> actions;   // a_i as sent to the simulator
  double accumulated_reward = 0.0;
  bool terminated_early = false;
  bool done = false;
  bool success = false;
  sim::RobotState final_robot;
};

// Runs one primitive as a fixed-horizon feedback loop on `world`:
// for each stage, compute its target, then for i = 1..H_stage compute the
// error, the controller action, and step the simulator. Rewards are summed
// over every low-level step, and the loop exits as soon as the simulator
// reports done. Args outside the search space are clipped.
ExecutionTrace Execute(sim::WorldState& world, const sim::TaskSpec& task,
                       const PrimitiveSpec& spec, const Eigen::VectorXd& args);

}  // namespace raps::primitives

#endif  // RAPS_PRIMITIVES_EXECUTOR_H_
