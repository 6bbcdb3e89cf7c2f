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

#include "raps/bench/usage.h"

#include <algorithm>
#include <numeric>

#include "raps/errors.h"

namespace raps::bench {

UsageSummary LogPrimitiveUsage(const std::vector<rl::CurveRow>& curve,
                               const std::vector<std::string>& names,
                               pamdp::ActionMode mode) {
  UsageSummary summary;
  summary.names = names;
  if (mode != pamdp::ActionMode::kRaps) {
    summary.note = "raw-action runs call no primitives";
    return summary;
  }
  for (const rl::CurveRow& row : curve) {
    const rl::EvalSummary& eval = row.eval;
    if (eval.primitive_counts.size() != names.size()) {
      throw InputError("primitive counts do not match the library");
    }
    EpochUsage epoch;
    epoch.training_steps = row.training_steps;
    epoch.episodes = eval.episodes;
    epoch.counts = eval.primitive_counts;
    epoch.total_calls =
        std::accumulate(epoch.counts.begin(), epoch.counts.end(),
                        std::int64_t{0});
    epoch.mean_unique = eval.MeanUniquePrimitives();
    epoch.max_unique =
        eval.unique_per_episode.empty()
            ? 0
            : *std::max_element(eval.unique_per_episode.begin(),
                                eval.unique_per_episode.end());
    epoch.early_termination = eval.early_termination;
    summary.epochs.push_back(std::move(epoch));
  }
  if (summary.epochs.empty()) summary.note = "no evaluations recorded";
  return summary;
}

bool UsageIsConsistent(const EpochUsage& epoch, int num_primitives,
                       int horizon) {
  const std::int64_t full =
      static_cast<std::int64_t>(epoch.episodes) * horizon;
  const bool calls_ok = epoch.early_termination ? epoch.total_calls <= full
                                                : epoch.total_calls == full;
  return calls_ok && epoch.max_unique <= std::min(num_primitives, horizon) &&
         epoch.mean_unique <= epoch.max_unique;
}

}  // namespace raps::bench
