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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "raps/bench/config.h"
#include "raps/bench/report.h"
#include "raps/bench/runner.h"
#include "raps/bench/stats.h"
#include "raps/bench/usage.h"
#include "raps/errors.h"

namespace raps::bench {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("raps_bench_" + name);
  fs::remove_all(dir);
  return dir;
}

json SmallConfig(const std::string& task, const std::string& mode,
                 const fs::path& out) {
  return {{"task", task},
          {"mode", mode},
          {"seeds", {1, 2}},
          {"budget", {{"max_training_steps", 80}}},
          {"eval_interval", 40},
          {"ppo", {{"num_envs", 4}, {"rollout_steps_raw", 32}}},
          {"output_dir", out.string()}};
}

TEST(StatsTest, ThreeValueTInterval) {
  // with 2 degrees of freedom the t quantile has a closed form:
  // t = (2a - 1) / sqrt(2a(1 - a)) at a = 0.975. sample sd of {1, 2, 3} is 1
  const double a = 0.975;
  const double t = (2 * a - 1) / std::sqrt(2 * a * (1 - a));
  EXPECT_NEAR(t, 4.302652729749464, 1e-12);
  const MeanInterval ci = MeanConfidenceInterval({1.0, 2.0, 3.0});
  EXPECT_EQ(ci.n, 3);
  EXPECT_DOUBLE_EQ(ci.mean, 2.0);
  EXPECT_NEAR(ci.half_width, t / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(ci.half_width, 2.48414, 1e-5);
  EXPECT_NEAR(ci.low, 2.0 - t / std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(ci.high, 2.0 + t / std::sqrt(3.0), 1e-9);
}

TEST(StatsTest, DegenerateSamples) {
  const MeanInterval one = MeanConfidenceInterval({0.4});
  EXPECT_EQ(one.low, 0.4);
  EXPECT_EQ(one.high, 0.4);
  const MeanInterval same = MeanConfidenceInterval({1.0, 1.0, 1.0});
  EXPECT_EQ(same.half_width, 0.0);
  EXPECT_THROW(MeanConfidenceInterval({}), InputError);
  EXPECT_THROW(MeanConfidenceInterval({1.0, 2.0}, 1.0), InputError);
}

TEST(ConfigTest, RequiredFieldsAndBounds) {
  json j = SmallConfig("lift-block", "raps", "out");
  EXPECT_NO_THROW(ConfigFromJson(j));

  json empty_budget = j;
  empty_budget["budget"] = json::object();
  EXPECT_THROW(ConfigFromJson(empty_budget), ConfigError);
  json no_seeds = j;
  no_seeds["seeds"] = json::array();
  EXPECT_THROW(ConfigFromJson(no_seeds), ConfigError);
  json typo = j;
  typo["eval_intervall"] = 5;
  EXPECT_THROW(ConfigFromJson(typo), ConfigError);
  json bad_ppo = j;
  bad_ppo["ppo"]["clip"] = -1.0;
  EXPECT_THROW(ConfigFromJson(bad_ppo), ConfigError);
  json bad_task = j;
  bad_task["task"] = "juggle";
  EXPECT_THROW(ConfigFromJson(bad_task), ConfigError);
  json bad_primitive = j;
  bad_primitive["primitives"] = {"grasp", "teleport"};
  EXPECT_THROW(ConfigFromJson(bad_primitive), ConfigError);
  json wrong_type = j;
  wrong_type["seeds"] = "1,2";
  EXPECT_THROW(ConfigFromJson(wrong_type), ConfigError);
}

TEST(ConfigTest, HashIgnoresPlumbingButNotSubstance) {
  const ExperimentConfig a = ConfigFromJson(SmallConfig("lift-block", "raps", "x"));
  ExperimentConfig b = ConfigFromJson(SmallConfig("lift-block", "raps", "y"));
  b.workers = 3;
  EXPECT_EQ(ConfigHash(a), ConfigHash(b));
  EXPECT_EQ(ConfigHash(a).size(), 16u);
  b.seeds = {1, 3};
  EXPECT_NE(ConfigHash(a), ConfigHash(b));
  // canonical JSON parses back to the same experiment
  json canonical = ConfigToJson(a);
  EXPECT_EQ(ConfigHash(ConfigFromJson(canonical)), ConfigHash(a));
}

TEST(ConfigTest, AblationsShapeTheLibrary) {
  json j = SmallConfig("lift-block", "raps", "out");
  j["ablations"] = {{"no_dummy", true}, {"yaw_enabled", true}};
  const ExperimentConfig config = ConfigFromJson(j);
  const auto library = config.ResolveLibrary();
  EXPECT_FALSE(library.Contains(primitives::kDummyPrimitive));
  EXPECT_TRUE(library.Contains("wrist-twist"));
  EXPECT_EQ(library.Size(), 12);
}

TEST(ConfigTest, EnvironmentOverrides) {
  ExperimentConfig config =
      ConfigFromJson(SmallConfig("lift-block", "raps", "from-file"));
  setenv("RAPS_OUTPUT_DIR", "/tmp/elsewhere", 1);
  setenv("RAPS_WORKERS", "3", 1);
  ApplyEnvironmentOverrides(config);
  EXPECT_EQ(config.output_dir, "/tmp/elsewhere");
  EXPECT_EQ(config.workers, 3);
  setenv("RAPS_WORKERS", "many", 1);
  EXPECT_THROW(ApplyEnvironmentOverrides(config), ConfigError);
  unsetenv("RAPS_OUTPUT_DIR");
  unsetenv("RAPS_WORKERS");
}

rl::CurveRow UsageRow(std::vector<std::int64_t> counts,
                      std::vector<int> unique, bool early = false) {
  rl::CurveRow row;
  row.training_steps = 200;
  row.eval.episodes = static_cast<int>(unique.size());
  row.eval.primitive_counts = std::move(counts);
  row.eval.unique_per_episode = std::move(unique);
  row.eval.early_termination = early;
  return row;
}

TEST(UsageTest, SingleDummyEpisode) {
  const std::vector<std::string> names = {"grasp", "go-to-pose-delta"};
  const UsageSummary usage = LogPrimitiveUsage({UsageRow({0, 5}, {1})}, names,
                                               pamdp::ActionMode::kRaps);
  ASSERT_EQ(usage.epochs.size(), 1u);
  EXPECT_EQ(usage.epochs[0].counts[1], 5);
  EXPECT_EQ(usage.epochs[0].total_calls, 5);
  EXPECT_EQ(usage.epochs[0].mean_unique, 1.0);
  EXPECT_TRUE(UsageIsConsistent(usage.epochs[0], 2, 5));
}

TEST(UsageTest, AccountingIdentity) {
  const std::vector<std::string> names(11, "p");
  std::vector<std::int64_t> counts(11, 0);
  counts[0] = 12;
  counts[3] = 13;
  UsageSummary usage = LogPrimitiveUsage({UsageRow(counts, {3, 2, 5, 1, 4})},
                                         names, pamdp::ActionMode::kRaps);
  // 5 episodes x horizon 5
  EXPECT_TRUE(UsageIsConsistent(usage.epochs[0], 11, 5));
  counts[3] = 12;  // one call missing without early termination
  usage = LogPrimitiveUsage({UsageRow(counts, {3, 2, 5, 1, 4})}, names,
                            pamdp::ActionMode::kRaps);
  EXPECT_FALSE(UsageIsConsistent(usage.epochs[0], 11, 5));
  usage = LogPrimitiveUsage({UsageRow(counts, {3, 2, 5, 1, 4}, true)}, names,
                            pamdp::ActionMode::kRaps);
  EXPECT_TRUE(UsageIsConsistent(usage.epochs[0], 11, 5));
  // six distinct primitives cannot fit in five calls
  usage = LogPrimitiveUsage({UsageRow(counts, {6, 2, 5, 1, 4}, true)}, names,
                            pamdp::ActionMode::kRaps);
  EXPECT_FALSE(UsageIsConsistent(usage.epochs[0], 11, 5));
}

TEST(UsageTest, RawRunsGiveEmptySummary) {
  const UsageSummary usage = LogPrimitiveUsage(
      {UsageRow({}, {})}, {"grasp"}, pamdp::ActionMode::kRaw);
  EXPECT_TRUE(usage.Empty());
  EXPECT_FALSE(usage.note.empty());
}

TEST(RunnerTest, RerunIsByteIdentical) {
  const fs::path dir = ScratchDir("rerun");
  ExperimentConfig config =
      ConfigFromJson(SmallConfig("lift-block", "raps", dir));
  const RunOutcome first = RunExperiment(config);
  ASSERT_FALSE(first.partial);
  const std::vector<fs::path> files = {
      "summary.tsv", "usage.tsv", "config.json", "status.json",
      "seed_1/metrics.jsonl", "seed_2/metrics.jsonl", "seed_1/snapshot.bin"};
  std::vector<std::string> before;
  for (const fs::path& f : files) before.push_back(ReadFile(dir / f));
  // a second worker must not change anything either
  config.workers = 2;
  RunExperiment(config);
  for (std::size_t i = 0; i < files.size(); ++i) {
    EXPECT_FALSE(before[i].empty()) << files[i];
    EXPECT_EQ(ReadFile(dir / files[i]), before[i]) << files[i];
  }
  fs::remove_all(dir);
}

TEST(RunnerTest, MetricsSchemaAndClocks) {
  const fs::path dir = ScratchDir("schema");
  for (const char* mode : {"raps", "raw"}) {
    const ExperimentConfig config =
        ConfigFromJson(SmallConfig("close-drawer", mode, dir / mode));
    const RunOutcome outcome = RunExperiment(config);
    ASSERT_EQ(outcome.records.size(), 2u);
    const int max_h = config.ResolveLibrary().MaxHorizon();
    for (const RunRecord& record : outcome.records) {
      std::ifstream in(dir / mode / ("seed_" + std::to_string(record.seed)) /
                       "metrics.jsonl");
      std::string line;
      std::set<std::string> keys;
      std::int64_t last_train = 0, last_low = 0, last_high = 0;
      int rows = 0;
      while (std::getline(in, line)) {
        ASSERT_EQ(line.find("NaN"), std::string::npos);
        const json row = json::parse(line);
        std::set<std::string> these;
        for (auto it = row.begin(); it != row.end(); ++it) these.insert(it.key());
        if (rows == 0) keys = these;
        EXPECT_EQ(these, keys);
        const std::int64_t train = row["training_steps"];
        const std::int64_t low = row["low_level_steps"];
        const std::int64_t high = row["high_level_steps"];
        EXPECT_GT(train, last_train);
        EXPECT_GT(low, last_low);
        EXPECT_GE(high, last_high);
        if (std::string(mode) == "raps") {
          EXPECT_GE(low, high);
          EXPECT_LE(low, high * max_h);
          // every rollout is num_envs x rollout_steps primitive calls
          EXPECT_EQ(high % (4 * config.ppo.rollout_steps_raps), 0);
        } else {
          EXPECT_EQ(low, high);
          EXPECT_EQ(low % (4 * 32), 0);
        }
        last_train = train;
        last_low = low;
        last_high = high;
        ++rows;
      }
      EXPECT_EQ(rows, 2);
    }
    // the wall-clock stream lines up with the metrics
    std::ifstream wall(dir / mode / "seed_1" / "wallclock.jsonl");
    std::string line;
    double last = 0.0;
    while (std::getline(wall, line)) {
      const double t = json::parse(line)["wall_clock_s"];
      EXPECT_GT(t, last);
      last = t;
    }
  }
  fs::remove_all(dir);
}

TEST(RunnerTest, NumericFailureIsPartial) {
  const fs::path dir = ScratchDir("partial");
  json j = SmallConfig("lift-block", "raps", dir);
  j["ppo"]["learning_rate"] = 1e300;
  const RunOutcome outcome = RunExperiment(ConfigFromJson(j));
  EXPECT_TRUE(outcome.partial);
  for (const RunRecord& r : outcome.records) {
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(fs::exists(dir / ("seed_" + std::to_string(r.seed)) /
                           "error.txt"));
  }
  const json status = json::parse(ReadFile(dir / "status.json"));
  EXPECT_TRUE(status["partial"].get<bool>());
  EXPECT_EQ(status["failed_seeds"].size(), 2u);
  fs::remove_all(dir);
}

TEST(RunnerTest, NoDummyAblationNeverCallsIt) {
  const fs::path dir = ScratchDir("no_dummy");
  json j = SmallConfig("lift-block", "raps", dir);
  j["ablations"] = {{"no_dummy", true}};
  const ExperimentConfig config = ConfigFromJson(j);
  const RunOutcome outcome = RunExperiment(config);
  ASSERT_FALSE(outcome.partial);
  const auto names = config.ResolveLibrary().Names();
  const int horizon = config.ResolveTask().high_level_horizon;
  for (const RunRecord& r : outcome.records) {
    const UsageSummary usage =
        LogPrimitiveUsage(r.curve, names, pamdp::ActionMode::kRaps);
    ASSERT_FALSE(usage.Empty());
    for (const EpochUsage& epoch : usage.epochs) {
      EXPECT_TRUE(UsageIsConsistent(epoch, static_cast<int>(names.size()),
                                    horizon));
    }
  }
  EXPECT_EQ(ReadFile(dir / "usage.tsv").find(primitives::kDummyPrimitive),
            std::string::npos);
  fs::remove_all(dir);
}

TEST(CompareTest, ChartsTableAndCaps) {
  const fs::path dir = ScratchDir("compare");
  json raps = SmallConfig("lift-block", "raps", dir / "raps");
  json raw = SmallConfig("lift-block", "raw", dir / "raw");
  raw["budget"]["max_training_steps"] = 120;
  RunExperiment(ConfigFromJson(raps));
  RunExperiment(ConfigFromJson(raw));
  const CompareReport report =
      Compare({(dir / "raps").string(), (dir / "raw").string()},
              (dir / "report").string());
  EXPECT_EQ(report.task, "lift-block");
  // min over the runs' final training step
  EXPECT_EQ(report.caps.at(Clock::kTrainingSteps), 80.0);
  for (const char* f :
       {"compare.tsv", "success_vs_training_steps.svg",
        "success_vs_wall_clock_s.svg", "success_vs_low_level_steps.svg",
        "primitive_usage.svg"}) {
    EXPECT_TRUE(fs::exists(dir / "report" / f)) << f;
  }
  const std::string svg = ReadFile(dir / "report" / "success_vs_training_steps.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  // 3 clocks x 2 runs, plus the header
  std::istringstream table(ReadFile(dir / "report" / "compare.tsv"));
  std::string line;
  int lines = 0;
  while (std::getline(table, line)) ++lines;
  EXPECT_EQ(lines, 7);

  json other = SmallConfig("open-door", "raps", dir / "door");
  RunExperiment(ConfigFromJson(other));
  EXPECT_THROW(Compare({(dir / "raps").string(), (dir / "door").string()},
                       (dir / "report2").string()),
               ConfigError);
  EXPECT_THROW(Compare({(dir / "raps").string()}, (dir / "r3").string()),
               ConfigError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace raps::bench
