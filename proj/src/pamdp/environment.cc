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

#include "raps/pamdp/environment.h"

#include "raps/errors.h"

namespace raps::pamdp {

const char* ActionModeName(ActionMode mode) {
  return mode == ActionMode::kRaps ? "raps" : "raw";
}

ActionMode ParseActionMode(const std::string& name) {
  if (name == "raps") return ActionMode::kRaps;
  if (name == "raw") return ActionMode::kRaw;
  throw ConfigError("unknown action mode '" + name + "' (want raps|raw)");
}

Environment::Environment(sim::TaskSpec task,
                         primitives::PrimitiveLibrary library, ActionMode mode,
                         sim::ObservationMode obs_mode)
    : task_(std::move(task)),
      library_(std::move(library)),
      mode_(mode),
      obs_mode_(obs_mode) {
  sim::ValidateTask(task_);
  if (mode_ == ActionMode::kRaps) {
    layout_ = HybridActionLayout::FromLibrary(library_);
  } else {
    layout_ = HybridActionLayout({sim::kRawActionDim});
  }
}

Eigen::VectorXd Environment::Reset(std::uint64_t seed) {
  world_ = sim::Reset(task_, seed);
  has_episode_ = true;
  done_ = false;
  high_level_steps_ = 0;
  low_level_steps_ = 0;
  return Observation();
}

int Environment::ObservationDim() const {
  return sim::ObservationDim(task_, obs_mode_);
}

Eigen::VectorXd Environment::Observation() const {
  return sim::Observe(world_, task_, obs_mode_);
}

void Environment::CheckStepAllowed(ActionMode required) const {
  if (mode_ != required) {
    throw InputError(std::string("environment is in ") +
                     ActionModeName(mode_) + " mode");
  }
  if (!has_episode_) throw InputError("call Reset before stepping");
  if (done_) throw InputError("episode finished; call Reset");
}

StepOutput Environment::Step(const HybridAction& action) {
  const DecodedAction decoded = Decode(action, layout_);
  return StepPrimitive(decoded.primitive, decoded.args);
}

StepOutput Environment::StepPrimitive(int primitive,
                                      const Eigen::VectorXd& args) {
  CheckStepAllowed(ActionMode::kRaps);
  const primitives::PrimitiveSpec& spec = library_[primitive];
  StepOutput out;
  out.info.primitive = primitive;
  out.info.trace = primitives::Execute(world_, task_, spec, args);
  out.info.args = spec.Clip(args);
  out.info.low_level_steps = out.info.trace.low_level_steps_used;
  out.info.success = out.info.trace.success;
  out.reward = out.info.trace.accumulated_reward;
  ++high_level_steps_;
  low_level_steps_ += out.info.low_level_steps;
  done_ = out.info.trace.done || high_level_steps_ >= task_.high_level_horizon;
  out.done = done_;
  out.observation = Observation();
  return out;
}

StepOutput Environment::StepRaw(const sim::RawAction& action) {
  CheckStepAllowed(ActionMode::kRaw);
  const sim::StepResult step = sim::StepLowLevel(world_, task_, action);
  StepOutput out;
  out.reward = step.reward;
  out.info.low_level_steps = 1;
  out.info.success = step.success;
  ++high_level_steps_;
  ++low_level_steps_;
  done_ = step.done;
  out.done = done_;
  out.observation = Observation();
  return out;
}

}  // namespace raps::pamdp
