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

#ifndef RAPS_TASKS_CATALOG_H_
#define RAPS_TASKS_CATALOG_H_

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "raps/sim/world.h"

namespace raps::tasks {

class TaskCatalog {
 public:
  // validates before inserting; replaces an existing entry of the same name
  void Add(sim::TaskSpec task);
  const sim::TaskSpec& Get(const std::string& name) const;
  bool Contains(const std::string& name) const {
    return tasks_.contains(name);
  }
  std::vector<std::string> Names() const;
  std::size_t Size() const { return tasks_.size(); }

 private:
  std::map<std::string, sim::TaskSpec> tasks_;
};

// lift-block, open-door, close-drawer, flip-switch, place-kettle,
// grasp-and-swing, and the 4-subtask sequential specs multi-task-a/-b
TaskCatalog BuiltinCatalog();

// names of the single-task entries of BuiltinCatalog()
std::vector<std::string> BuiltinSingleTasks();

// JSON schema shared by built-ins and user config files (docs/config.md)
nlohmann::json TaskToJson(const sim::TaskSpec& task);
sim::TaskSpec TaskFromJson(const nlohmann::json& j);

}  // namespace raps::tasks

#endif  // RAPS_TASKS_CATALOG_H_
