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

#include "raps/tasks/catalog.h"

#include "raps/errors.h"

namespace raps::tasks {

using nlohmann::json;
using sim::ArticulatedObject;
using sim::JointKind;
using sim::ObjectInit;
using sim::TaskSpec;

void TaskCatalog::Add(TaskSpec task) {
  sim::ValidateTask(task);
  std::string name = task.name;
  tasks_.insert_or_assign(std::move(name), std::move(task));
}

const TaskSpec& TaskCatalog::Get(const std::string& name) const {
  auto it = tasks_.find(name);
  if (it == tasks_.end()) throw ConfigError("unknown task '" + name + "'");
  return it->second;
}

std::vector<std::string> TaskCatalog::Names() const {
  std::vector<std::string> names;
  for (const auto& [name, task] : tasks_) names.push_back(name);
  return names;
}

namespace {

Eigen::VectorXd Scalar(double value) {
  return Eigen::VectorXd::Constant(1, value);
}

ObjectInit Prismatic(const std::string& id, const Eigen::Vector3d& anchor,
                     const Eigen::Vector3d& axis, double lo, double hi,
                     double init_lo, double init_hi, double grasp_radius) {
  ObjectInit init;
  ArticulatedObject& obj = init.object;
  obj.id = id;
  obj.kind = JointKind::kPrismatic;
  obj.anchor = anchor;
  obj.axis = axis.normalized();
  obj.qpos = Scalar(init_lo);
  obj.lower = Scalar(lo);
  obj.upper = Scalar(hi);
  obj.grasp_radius = grasp_radius;
  init.init_lower = Scalar(init_lo);
  init.init_upper = Scalar(init_hi);
  return init;
}

ObjectInit Revolute(const std::string& id, const Eigen::Vector3d& hinge,
                    const Eigen::Vector3d& axis, const Eigen::Vector3d& lever,
                    double lo, double hi, double init_lo, double init_hi,
                    double grasp_radius) {
  ObjectInit init = Prismatic(id, hinge, axis, lo, hi, init_lo, init_hi,
                              grasp_radius);
  init.object.kind = JointKind::kRevolute;
  init.object.lever = lever;
  return init;
}

ObjectInit Free(const std::string& id, const sim::Box& workspace,
                const Eigen::Vector3d& init_lo, const Eigen::Vector3d& init_hi,
                double grasp_radius) {
  ObjectInit init;
  ArticulatedObject& obj = init.object;
  obj.id = id;
  obj.kind = JointKind::kFree;
  obj.qpos = init_lo;
  obj.lower = workspace.lower;
  obj.upper = workspace.upper;
  obj.grasp_radius = grasp_radius;
  init.init_lower = init_lo;
  init.init_upper = init_hi;
  return init;
}

TaskSpec Single(const std::string& name, const Eigen::Vector3d& start) {
  TaskSpec task;
  task.name = name;
  task.start_pose.position = start;
  task.max_low_level_steps = 250;
  task.high_level_horizon = 5;
  return task;
}

// Object placements shared by the single tasks and the multi-task scenes.
const Eigen::Vector3d kZ = Eigen::Vector3d::UnitZ();

ObjectInit Block(const sim::Box& ws) {
  return Free("block", ws, Eigen::Vector3d(-0.03, -0.03, 0.05),
              Eigen::Vector3d(0.03, 0.03, 0.05), 0.1);
}

ObjectInit Drawer() {
  // handle slides along +y; qpos 0 is closed
  return Prismatic("drawer", Eigen::Vector3d(0.0, -0.5, 0.3),
                   Eigen::Vector3d::UnitY(), 0.0, 1.0, 0.75, 0.8, 0.1);
}

ObjectInit Door() {
  // hinge on the left, handle swings toward +y as qpos grows
  return Revolute("door", Eigen::Vector3d(-0.3, 0.0, 0.3), kZ,
                  Eigen::Vector3d(0.3, 0.0, 0.0), 0.0, 1.6, 0.0, 0.25, 0.08);
}

ObjectInit Switch(const Eigen::Vector3d& anchor) {
  return Prismatic("switch", anchor, kZ, 0.0, 0.4, 0.0, 0.0, 0.08);
}

ObjectInit Kettle(const sim::Box& ws) {
  return Free("kettle", ws, Eigen::Vector3d(0.23, -0.27, 0.05),
              Eigen::Vector3d(0.27, -0.23, 0.05), 0.1);
}

ObjectInit Hinge() {
  // long lever arm, small grasp radius: grasp far from the hinge and swing
  return Revolute("hinge", Eigen::Vector3d(0.4, 0.3, 0.5), kZ,
                  Eigen::Vector3d(-0.35, 0.0, 0.0), 0.0, 1.5, 0.0, 0.0, 0.05);
}

sim::Goal GoalOf(const std::string& id, const Eigen::VectorXd& qpos) {
  return {id, qpos};
}

}  // namespace

std::vector<std::string> BuiltinSingleTasks() {
  return {"lift-block",  "open-door",    "close-drawer",
          "flip-switch", "place-kettle", "grasp-and-swing"};
}

TaskCatalog BuiltinCatalog() {
  TaskCatalog catalog;
  const sim::Box ws;

  {
    TaskSpec task = Single("lift-block", Eigen::Vector3d(0.0, 0.0, 0.1));
    task.objects = {Block(ws)};
    task.goals = {GoalOf("block", Eigen::Vector3d(0.0, 0.0, 0.6))};
    catalog.Add(task);
  }
  {
    TaskSpec task = Single("open-door", Eigen::Vector3d(0.0, -0.1, 0.3));
    task.objects = {Door()};
    task.goals = {GoalOf("door", Scalar(1.2))};
    catalog.Add(task);
  }
  {
    TaskSpec task = Single("close-drawer", Eigen::Vector3d(0.0, 0.3, 0.3));
    task.objects = {Drawer()};
    task.goals = {GoalOf("drawer", Scalar(0.0))};
    catalog.Add(task);
  }
  {
    TaskSpec task = Single("flip-switch", Eigen::Vector3d(0.0, 0.0, 0.3));
    task.objects = {Switch(Eigen::Vector3d(0.3, 0.3, 0.3))};
    task.goals = {GoalOf("switch", Scalar(0.4))};
    catalog.Add(task);
  }
  {
    TaskSpec task = Single("place-kettle", Eigen::Vector3d(0.25, -0.25, 0.12));
    task.objects = {Kettle(ws)};
    task.goals = {GoalOf("kettle", Eigen::Vector3d(-0.2, 0.2, 0.3))};
    catalog.Add(task);
  }
  {
    TaskSpec task = Single("grasp-and-swing", Eigen::Vector3d(0.0, 0.0, 0.5));
    task.objects = {Hinge()};
    task.goals = {GoalOf("hinge", Scalar(1.2))};
    catalog.Add(task);
  }
  {
    TaskSpec task = Single("multi-task-a", Eigen::Vector3d(0.0, 0.3, 0.3));
    // the switch sits below where a full drawer pull ends
    task.objects = {Drawer(), Switch(Eigen::Vector3d(0.0, -0.2, 0.0)),
                    Block(ws), Door()};
    task.goals = {GoalOf("drawer", Scalar(0.0)), GoalOf("switch", Scalar(0.4)),
                  GoalOf("block", Eigen::Vector3d(0.0, 0.0, 0.6)),
                  GoalOf("door", Scalar(1.2))};
    task.subtask_order = {"drawer", "switch", "block", "door"};
    task.max_low_level_steps = 750;
    task.high_level_horizon = 15;
    catalog.Add(task);
  }
  {
    TaskSpec task = Single("multi-task-b", Eigen::Vector3d(0.0, 0.0, 0.3));
    task.objects = {Kettle(ws), Hinge(), Switch(Eigen::Vector3d(0.3, 0.3, 0.3)),
                    Drawer()};
    task.goals = {GoalOf("kettle", Eigen::Vector3d(-0.2, 0.2, 0.3)),
                  GoalOf("hinge", Scalar(1.2)), GoalOf("switch", Scalar(0.4)),
                  GoalOf("drawer", Scalar(0.0))};
    task.subtask_order = {"kettle", "hinge", "switch", "drawer"};
    task.max_low_level_steps = 750;
    task.high_level_horizon = 15;
    catalog.Add(task);
  }
  return catalog;
}

namespace {

json Vec(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd ReadVec(const json& j, const std::string& key, int dim) {
  if (!j.contains(key)) throw ConfigError("missing key '" + key + "'");
  const std::vector<double> values = j.at(key).get<std::vector<double>>();
  if (dim >= 0 && static_cast<int>(values.size()) != dim) {
    throw ConfigError("key '" + key + "' expects " + std::to_string(dim) +
                      " numbers");
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
}

}  // namespace

json TaskToJson(const TaskSpec& task) {
  json j;
  j["name"] = task.name;
  j["workspace"] = {{"lower", Vec(task.workspace.lower)},
                    {"upper", Vec(task.workspace.upper)}};
  j["start"] = {{"position", Vec(task.start_pose.position)},
                {"yaw", task.start_pose.yaw},
                {"aperture", task.start_aperture}};
  j["objects"] = json::array();
  for (const ObjectInit& init : task.objects) {
    const ArticulatedObject& obj = init.object;
    json o = {{"id", obj.id},
              {"joint", sim::JointKindName(obj.kind)},
              {"lower", Vec(obj.lower)},
              {"upper", Vec(obj.upper)},
              {"init_lower", Vec(init.init_lower)},
              {"init_upper", Vec(init.init_upper)},
              {"grasp_radius", obj.grasp_radius}};
    if (obj.kind != JointKind::kFree) {
      o["axis"] = Vec(obj.axis);
      o["anchor"] = Vec(obj.anchor);
    }
    if (obj.kind == JointKind::kRevolute) o["lever"] = Vec(obj.lever);
    j["objects"].push_back(std::move(o));
  }
  j["goals"] = json::array();
  for (const sim::Goal& goal : task.goals) {
    j["goals"].push_back({{"object", goal.object_id}, {"qpos", Vec(goal.qpos)}});
  }
  j["success_threshold"] = task.success_threshold;
  j["subtask_order"] = task.subtask_order;
  j["max_low_level_steps"] = task.max_low_level_steps;
  j["high_level_horizon"] = task.high_level_horizon;
  return j;
}

TaskSpec TaskFromJson(const json& j) {
  try {
    TaskSpec task;
    task.name = j.at("name").get<std::string>();
    if (j.contains("workspace")) {
      task.workspace.lower = ReadVec(j["workspace"], "lower", 3);
      task.workspace.upper = ReadVec(j["workspace"], "upper", 3);
    }
    if (j.contains("start")) {
      const json& start = j["start"];
      task.start_pose.position = ReadVec(start, "position", 3);
      task.start_pose.yaw = start.value("yaw", 0.0);
      task.start_aperture = start.value("aperture", 1.0);
    }
    for (const json& o : j.at("objects")) {
      ObjectInit init;
      ArticulatedObject& obj = init.object;
      obj.id = o.at("id").get<std::string>();
      obj.kind = sim::ParseJointKind(o.at("joint").get<std::string>());
      const int dim = obj.QposDim();
      if (obj.kind == JointKind::kFree) {
        obj.lower = o.contains("lower") ? ReadVec(o, "lower", 3)
                                        : Eigen::VectorXd(task.workspace.lower);
        obj.upper = o.contains("upper") ? ReadVec(o, "upper", 3)
                                        : Eigen::VectorXd(task.workspace.upper);
      } else {
        obj.axis = ReadVec(o, "axis", 3);
        obj.anchor = ReadVec(o, "anchor", 3);
        obj.lower = ReadVec(o, "lower", 1);
        obj.upper = ReadVec(o, "upper", 1);
      }
      if (obj.kind == JointKind::kRevolute) obj.lever = ReadVec(o, "lever", 3);
      init.init_lower = ReadVec(o, "init_lower", dim);
      init.init_upper = o.contains("init_upper") ? ReadVec(o, "init_upper", dim)
                                                 : init.init_lower;
      obj.qpos = init.init_lower;
      obj.grasp_radius = o.value("grasp_radius", sim::kDefaultGraspRadius);
      task.objects.push_back(std::move(init));
    }
    for (const json& g : j.at("goals")) {
      task.goals.push_back(
          {g.at("object").get<std::string>(), ReadVec(g, "qpos", -1)});
    }
    task.success_threshold =
        j.value("success_threshold", sim::kDefaultSuccessThreshold);
    task.subtask_order =
        j.value("subtask_order", std::vector<std::string>{});
    task.max_low_level_steps = j.value("max_low_level_steps", 250);
    task.high_level_horizon = j.value("high_level_horizon", 5);
    sim::ValidateTask(task);
    return task;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed task spec: ") + e.what());
  }
}

}  // namespace raps::tasks
