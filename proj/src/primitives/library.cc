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

#include "raps/primitives/library.h"

#include <algorithm>
#include <numbers>
#include <set>

#include "raps/errors.h"

namespace raps::primitives {

PrimitiveLibrary::PrimitiveLibrary(std::vector<PrimitiveSpec> specs)
    : specs_(std::move(specs)) {
  std::set<std::string> names;
  for (const PrimitiveSpec& spec : specs_) {
    ValidatePrimitive(spec);
    if (!names.insert(spec.name).second) {
      throw ConfigError("duplicate primitive '" + spec.name + "'");
    }
    total_arg_dim_ += spec.ArgDim();
  }
}

const PrimitiveSpec& PrimitiveLibrary::operator[](int k) const {
  if (k < 0 || k >= Size()) {
    throw InputError("primitive index " + std::to_string(k) +
                     " out of range [0, " + std::to_string(Size()) + ")");
  }
  return specs_[k];
}

std::vector<std::string> PrimitiveLibrary::Names() const {
  std::vector<std::string> names;
  for (const PrimitiveSpec& spec : specs_) names.push_back(spec.name);
  return names;
}

int PrimitiveLibrary::MaxHorizon() const {
  int horizon = 0;
  for (const PrimitiveSpec& spec : specs_) {
    horizon = std::max(horizon, spec.Horizon());
  }
  return horizon;
}

int PrimitiveLibrary::IndexOf(const std::string& name) const {
  for (int k = 0; k < Size(); ++k) {
    if (specs_[k].name == name) return k;
  }
  return -1;
}

PrimitiveLibrary PrimitiveLibrary::Subset(
    const std::vector<std::string>& names) const {
  for (const std::string& name : names) {
    if (!Contains(name)) throw ConfigError("unknown primitive '" + name + "'");
  }
  std::vector<PrimitiveSpec> kept;
  for (const PrimitiveSpec& spec : specs_) {
    if (std::find(names.begin(), names.end(), spec.name) != names.end()) {
      kept.push_back(spec);
    }
  }
  if (kept.empty()) throw ConfigError("primitive subset is empty");
  return PrimitiveLibrary(std::move(kept));
}

PrimitiveLibrary PrimitiveLibrary::Without(const std::string& name) const {
  std::vector<PrimitiveSpec> kept;
  for (const PrimitiveSpec& spec : specs_) {
    if (spec.name != name) kept.push_back(spec);
  }
  if (kept.empty()) throw ConfigError("library would be empty");
  return PrimitiveLibrary(std::move(kept));
}

namespace {

Eigen::VectorXd Vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double value : values) v[i++] = value;
  return v;
}

PrimitiveSpec Make(const std::string& name, Eigen::VectorXd lower,
                   Eigen::VectorXd upper, const std::string& target_rule,
                   std::vector<Stage> stages) {
  PrimitiveSpec spec;
  spec.name = name;
  spec.lower = std::move(lower);
  spec.upper = std::move(upper);
  spec.target_rule = target_rule;
  spec.stages = std::move(stages);
  spec.uses_gripper = std::any_of(
      spec.stages.begin(), spec.stages.end(),
      [](const Stage& stage) { return stage.kind == StageKind::kGripper; });
  return spec;
}

PrimitiveSpec Gripper(const std::string& name, double lo, double hi) {
  return Make(name, Vec({lo}), Vec({hi}), "gripper",
              {{StageKind::kGripper, {}, {0}, 10}});
}

PrimitiveSpec Axis(const std::string& name, int axis, double lo, double hi) {
  return Make(name, Vec({lo}), Vec({hi}), "translate",
              {{StageKind::kTranslate, {axis}, {0}, 30}});
}

}  // namespace

PrimitiveLibrary DefaultLibrary(DofMode mode) {
  constexpr double kPi = std::numbers::pi;
  std::vector<PrimitiveSpec> specs;
  specs.push_back(Gripper("grasp", 0.0, 1.0));
  specs.push_back(Gripper("release", -1.0, 0.0));
  specs.push_back(Axis("lift", kZ, 0.0, 1.0));
  specs.push_back(Axis("drop", kZ, -1.0, 0.0));
  specs.push_back(Axis("push", kY, 0.0, 1.0));
  specs.push_back(Axis("pull", kY, -1.0, 0.0));
  specs.push_back(Axis("shift-right", kX, 0.0, 1.0));
  specs.push_back(Axis("shift-left", kX, -1.0, 0.0));

  specs.push_back(Make(kDummyPrimitive, Vec({-1, -1, -1}), Vec({1, 1, 1}),
                       "translate",
                       {{StageKind::kTranslate, {kX, kY, kZ}, {0, 1, 2}, 30}}));
  // planar approach, descend, close
  specs.push_back(Make("top-grasp", Vec({-1, -1, -1, 0}), Vec({1, 1, 0, 1}),
                       "composite",
                       {{StageKind::kTranslate, {kX, kY}, {0, 1}, 25},
                        {StageKind::kTranslate, {kZ}, {2}, 20},
                        {StageKind::kGripper, {}, {3}, 15}}));
  specs.push_back(Make("top-z-grasp", Vec({-1, 0}), Vec({0, 1}), "composite",
                       {{StageKind::kTranslate, {kZ}, {0}, 30},
                        {StageKind::kGripper, {}, {1}, 10}}));
  if (mode == DofMode::kPositionYaw) {
    specs.push_back(Make("wrist-twist", Vec({-kPi}), Vec({kPi}), "twist",
                         {{StageKind::kTwist, {}, {0}, 30}}));
    // twist, move forward in the wrist frame, close
    specs.push_back(Make("angled-forward-grasp", Vec({-kPi, -1, -1, 0}),
                         Vec({kPi, 1, 1, 1}), "composite",
                         {{StageKind::kTwist, {}, {0}, 30},
                          {StageKind::kForwardTranslate, {}, {1, 2}, 45},
                          {StageKind::kGripper, {}, {3}, 15}}));
  }
  return PrimitiveLibrary(std::move(specs));
}

}  // namespace raps::primitives
