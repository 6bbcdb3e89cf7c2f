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

#ifndef RAPS_RL_SNAPSHOT_H_
#define RAPS_RL_SNAPSHOT_H_

#include <string>

#include "json.hpp"
#include "raps/rl/trainer.h"

namespace raps::rl {

// Snapshot file layout:
//
//   RAPS-SNAPSHOT 1\n
//   <JSON header, pretty-printed>\n
//   END-HEADER\n
//   <float64 little-endian arrays, in header "arrays" order>
//
// The header records the action layout, every network's layer shapes, the
// parameter segments, the array table and any caller-supplied metadata
// (task, mode, primitive names, config hash).
inline constexpr int kSnapshotVersion = 1;

void SaveSnapshot(const std::string& path, const TrainedPolicy& policy,
                  const nlohmann::json& metadata);

struct LoadedSnapshot {
  TrainedPolicy policy;
  nlohmann::json header;
};

// throws ConfigError on a malformed or inconsistent file
LoadedSnapshot LoadSnapshot(const std::string& path);

}  // namespace raps::rl

#endif  // RAPS_RL_SNAPSHOT_H_
