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

#ifndef RAPS_BENCH_REPORT_H_
#define RAPS_BENCH_REPORT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace raps::bench {

enum class Clock { kTrainingSteps, kWallClock, kLowLevelSteps };

inline constexpr Clock kAllClocks[] = {Clock::kTrainingSteps, Clock::kWallClock,
                                       Clock::kLowLevelSteps};
const char* ClockName(Clock clock);

struct CurvePoint {
  double x = 0.0;
  double success = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// A finished run directory as read back from disk.
struct LoadedRun {
  std::string dir;
  std::string label;  // directory name
  std::string task;
  std::string mode;
  std::string config_hash;
  std::map<Clock, std::vector<CurvePoint>> curves;
  std::vector<std::string> primitive_names;
  // call counts of the final evaluation, summed over seeds
  std::vector<std::int64_t> final_usage;
};

// throws ConfigError when files are missing or malformed
LoadedRun LoadRun(const std::string& dir);

// A delimited text table cell: tab-separated, "NA" when undefined.
struct CompareRow {
  std::string run;
  std::string mode;
  Clock clock = Clock::kTrainingSteps;
  double cap = 0.0;
  bool has_value = false;
  CurvePoint at_cap;  // last point with x <= cap
};

struct CompareReport {
  std::string task;
  std::map<Clock, double> caps;  // smallest final x across runs
  std::vector<CompareRow> rows;
  std::vector<std::string> files;  // everything written
};

// Needs at least two runs on the same task. Writes compare.tsv, one SVG per
// clock (x-axis capped at the common budget) and, when any run used
// primitives, primitive_usage.svg.
CompareReport Compare(const std::vector<std::string>& run_dirs,
                      const std::string& out_dir);

}  // namespace raps::bench

#endif  // RAPS_BENCH_REPORT_H_
