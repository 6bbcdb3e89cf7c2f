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

#include "raps/primitives/executor.h"

#include "raps/errors.h"

namespace raps::primitives {

ExecutionTrace Execute(sim::WorldState& world, const sim::TaskSpec& task,
                       const PrimitiveSpec& spec,
                       const Eigen::VectorXd& args) {
  if (args.size() != spec.ArgDim()) {
    throw InputError("primitive '" + spec.name + "' expects " +
                     std::to_string(spec.ArgDim()) + " args, got " +
                     std::to_string(args.size()));
  }
  if (!args.allFinite()) {
    throw InputError("primitive '" + spec.name + "' got non-finite args");
  }
  const Eigen::VectorXd clipped = spec.Clip(args);
  const Eigen::Vector3d scale = task.ArgScale();

  ExecutionTrace trace;
  trace.horizon = spec.Horizon();
  trace.errors.reserve(trace.horizon);
  trace.actions.reserve(trace.horizon);
  for (const Stage& stage : spec.stages) {
    // stage targets come from the state the stage starts in
    const ControlTarget target =
        ComputeStageTarget(world.robot, stage, clipped, scale);
    for (int i = 0; i < stage.horizon; ++i) {
      const ControlVector error = StateError(world.robot, target);
      const sim::RawAction action = ControlAction(error);
      trace.errors.push_back(error.norm());
      trace.actions.push_back(action);
      const sim::StepResult step = sim::StepLowLevel(world, task, action);
      ++trace.low_level_steps_used;
      trace.accumulated_reward += step.reward;
      trace.success = trace.success || step.success;
      if (step.done) {
        trace.done = true;
        break;
      }
    }
    if (trace.done) break;
  }
  trace.terminated_early = trace.low_level_steps_used < trace.horizon;
  trace.final_robot = world.robot;
  return trace;
}

}  // namespace raps::primitives
