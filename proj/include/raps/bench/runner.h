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

#ifndef RAPS_BENCH_RUNNER_H_
#define RAPS_BENCH_RUNNER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "raps/bench/config.h"
#include "raps/bench/stats.h"
#include "raps/rl/trainer.h"

namespace raps::bench {

// Run directory layout:
//
//   config.json                 canonical config plus its hash
//   summary.tsv                 per-evaluation mean success and 95% CI
//                               over seeds (training and low-level clocks)
//   summary_wallclock.tsv       the same against mean wall-clock seconds
//   usage.tsv                   primitive call counts per evaluation
//   status.json                 completed and failed seeds
//   seed_<s>/metrics.jsonl      one evaluation per line, deterministic
//   seed_<s>/wallclock.jsonl    wall-clock seconds per evaluation
//   seed_<s>/snapshot.bin       final policy
//
// Everything except the wall-clock files is a pure function of the config,
// so reruns are byte-identical.

struct RunRecord {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<rl::CurveRow> curve;
  std::string snapshot_path;  // empty when the seed failed
  std::string error;          // numeric failure message, if any

  bool ok() const { return error.empty(); }
};

struct SummaryRow {
  int eval_index = 0;
  std::int64_t training_steps = 0;
  double low_level_steps = 0.0;   // mean over seeds
  double high_level_steps = 0.0;  // mean over seeds
  double wall_clock_s = 0.0;      // mean over seeds
  MeanInterval success;
  MeanInterval episode_return;
};

struct RunOutcome {
  std::vector<RunRecord> records;  // in config seed order
  std::vector<SummaryRow> summary;
  bool partial = false;  // some seed failed
};

// Aggregates completed records row by row, up to the shortest curve.
std::vector<SummaryRow> Summarize(const std::vector<RunRecord>& records);

// Trains every seed (config.workers at a time), streams metrics, writes the
// summary files. Numeric failures are recorded per seed and flagged as
// partial; configuration and I/O errors propagate.
RunOutcome RunExperiment(const ExperimentConfig& config);

// metrics.jsonl line for one evaluation row (keys sorted, no wall clock)
std::string MetricsLine(const rl::CurveRow& row,
                        const std::vector<std::string>& primitive_names);

}  // namespace raps::bench

#endif  // RAPS_BENCH_RUNNER_H_
