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

#ifndef RAPS_BENCH_USAGE_H_
#define RAPS_BENCH_USAGE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "raps/pamdp/environment.h"
#include "raps/rl/trainer.h"

namespace raps::bench {

// Primitive usage of one evaluation round.
struct EpochUsage {
  std::int64_t training_steps = 0;
  int episodes = 0;
  std::vector<std::int64_t> counts;  // aligned with UsageSummary::names
  std::int64_t total_calls = 0;
  double mean_unique = 0.0;
  int max_unique = 0;
  bool early_termination = false;
};

struct UsageSummary {
  std::vector<std::string> names;
  std::vector<EpochUsage> epochs;
  std::string note;  // set when there is nothing to summarize

  bool Empty() const { return epochs.empty(); }
};

// Per-evaluation call counts by primitive name and the mean number of
// distinct primitives per episode. Raw-mode curves give an empty summary.
UsageSummary LogPrimitiveUsage(const std::vector<rl::CurveRow>& curve,
                               const std::vector<std::string>& names,
                               pamdp::ActionMode mode);

// Checks the accounting identities of one epoch: calls sum to
// episodes x horizon unless some episode ended early (then at most that),
// and no episode uses more than min(K, horizon) distinct primitives.
bool UsageIsConsistent(const EpochUsage& epoch, int num_primitives,
                       int horizon);

}  // namespace raps::bench

#endif  // RAPS_BENCH_USAGE_H_
