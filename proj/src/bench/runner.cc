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

#include "raps/bench/runner.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "raps/bench/usage.h"
#include "raps/errors.h"
#include "raps/rl/snapshot.h"
#include "raps/tasks/catalog.h"

namespace raps::bench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::ofstream OpenOrThrow(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

void CheckFinite(const rl::CurveRow& row) {
  if (!std::isfinite(row.eval.success_rate) ||
      !std::isfinite(row.eval.mean_return) ||
      !std::isfinite(row.wall_clock_s)) {
    throw NumericError("non-finite evaluation metrics at training step " +
                       std::to_string(row.training_steps));
  }
}

RunRecord RunSeed(const ExperimentConfig& config, const std::string& hash,
                  std::uint64_t seed) {
  RunRecord record;
  record.config_hash = hash;
  record.seed = seed;
  const fs::path dir = fs::path(config.output_dir) /
                       ("seed_" + std::to_string(seed));
  fs::create_directories(dir);
  std::ofstream metrics = OpenOrThrow(dir / "metrics.jsonl");
  std::ofstream wallclock = OpenOrThrow(dir / "wallclock.jsonl");
  fs::remove(dir / "snapshot.bin");
  fs::remove(dir / "error.txt");

  rl::TrainSetup setup = config.MakeSetup(seed);
  const std::vector<std::string> names = setup.library.Names();
  setup.on_eval = [&](const rl::CurveRow& row) {
    CheckFinite(row);
    record.curve.push_back(row);
    metrics << MetricsLine(row, names) << '\n' << std::flush;
    wallclock << json{{"training_steps", row.training_steps},
                      {"wall_clock_s", row.wall_clock_s}}
                     .dump()
              << '\n'
              << std::flush;
  };
  try {
    const rl::TrainResult result = rl::Train(setup);
    json meta = {{"config_hash", hash},
                 {"seed", seed},
                 {"task", tasks::TaskToJson(setup.task)},
                 {"mode", pamdp::ActionModeName(setup.mode)},
                 {"primitives", names},
                 {"yaw_enabled", config.yaw_enabled},
                 {"observation", setup.observation ==
                                         sim::ObservationMode::kState
                                     ? "state"
                                     : "state+grid"},
                 {"training_steps", result.training_steps},
                 {"low_level_steps", result.low_level_steps}};
    record.snapshot_path = (dir / "snapshot.bin").string();
    rl::SaveSnapshot(record.snapshot_path, result.policy, meta);
  } catch (const NumericError& e) {
    record.error = e.what();
    if (!e.diagnostics().empty()) record.error += " (" + e.diagnostics() + ")";
    std::ofstream err = OpenOrThrow(dir / "error.txt");
    err << record.error << '\n';
  }
  return record;
}

void WriteSummaries(const ExperimentConfig& config,
                    const std::vector<SummaryRow>& rows) {
  const fs::path dir(config.output_dir);
  std::ofstream out = OpenOrThrow(dir / "summary.tsv");
  out << "eval_index\ttraining_steps\tlow_level_steps\thigh_level_steps\t"
         "seeds\tsuccess_mean\tsuccess_ci_low\tsuccess_ci_high\t"
         "return_mean\treturn_ci_low\treturn_ci_high\n";
  for (const SummaryRow& r : rows) {
    out << r.eval_index << '\t' << r.training_steps << '\t'
        << Num(r.low_level_steps) << '\t' << Num(r.high_level_steps) << '\t'
        << r.success.n << '\t' << Num(r.success.mean) << '\t'
        << Num(r.success.low) << '\t' << Num(r.success.high) << '\t'
        << Num(r.episode_return.mean) << '\t' << Num(r.episode_return.low)
        << '\t' << Num(r.episode_return.high) << '\n';
  }
  std::ofstream wall = OpenOrThrow(dir / "summary_wallclock.tsv");
  wall << "eval_index\twall_clock_s\tseeds\tsuccess_mean\tsuccess_ci_low\t"
          "success_ci_high\n";
  for (const SummaryRow& r : rows) {
    wall << r.eval_index << '\t' << Num(r.wall_clock_s) << '\t' << r.success.n
         << '\t' << Num(r.success.mean) << '\t' << Num(r.success.low) << '\t'
         << Num(r.success.high) << '\n';
  }
}

void WriteUsage(const ExperimentConfig& config,
                const std::vector<RunRecord>& records) {
  const std::vector<std::string> names = config.ResolveLibrary().Names();
  std::ofstream out = OpenOrThrow(fs::path(config.output_dir) / "usage.tsv");
  out << "seed\ttraining_steps\tepisodes\tmean_unique";
  for (const std::string& name : names) out << '\t' << name;
  out << '\n';
  for (const RunRecord& record : records) {
    const UsageSummary usage =
        LogPrimitiveUsage(record.curve, names, config.mode);
    for (const EpochUsage& epoch : usage.epochs) {
      out << record.seed << '\t' << epoch.training_steps << '\t'
          << epoch.episodes << '\t' << Num(epoch.mean_unique);
      for (std::int64_t c : epoch.counts) out << '\t' << c;
      out << '\n';
    }
  }
}

}  // namespace

std::string MetricsLine(const rl::CurveRow& row,
                        const std::vector<std::string>& primitive_names) {
  json j = {{"training_steps", row.training_steps},
            {"low_level_steps", row.low_level_steps},
            {"high_level_steps", row.high_level_steps},
            {"eval_episodes", row.eval.episodes},
            {"eval_success_rate", row.eval.success_rate},
            {"eval_mean_return", row.eval.mean_return},
            {"eval_high_level_steps", row.eval.high_level_steps},
            {"early_termination", row.eval.early_termination}};
  if (!row.eval.primitive_counts.empty()) {
    json counts = json::object();
    for (std::size_t k = 0; k < primitive_names.size(); ++k) {
      counts[primitive_names[k]] = row.eval.primitive_counts.at(k);
    }
    j["primitive_counts"] = counts;
    j["mean_unique_primitives"] = row.eval.MeanUniquePrimitives();
  }
  return j.dump();
}

std::vector<SummaryRow> Summarize(const std::vector<RunRecord>& records) {
  std::vector<const RunRecord*> done;
  for (const RunRecord& r : records) {
    if (r.ok()) done.push_back(&r);
  }
  std::vector<SummaryRow> rows;
  if (done.empty()) return rows;
  std::size_t length = done.front()->curve.size();
  for (const RunRecord* r : done) length = std::min(length, r->curve.size());
  const double n = static_cast<double>(done.size());
  for (std::size_t i = 0; i < length; ++i) {
    SummaryRow row;
    row.eval_index = static_cast<int>(i);
    row.training_steps = done.front()->curve[i].training_steps;
    std::vector<double> success, returns;
    for (const RunRecord* r : done) {
      const rl::CurveRow& c = r->curve[i];
      row.low_level_steps += static_cast<double>(c.low_level_steps) / n;
      row.high_level_steps += static_cast<double>(c.high_level_steps) / n;
      row.wall_clock_s += c.wall_clock_s / n;
      success.push_back(c.eval.success_rate);
      returns.push_back(c.eval.mean_return);
    }
    row.success = MeanConfidenceInterval(success);
    row.episode_return = MeanConfidenceInterval(returns);
    rows.push_back(row);
  }
  return rows;
}

RunOutcome RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const std::string hash = ConfigHash(config);
  fs::create_directories(config.output_dir);
  {
    std::ofstream out =
        OpenOrThrow(fs::path(config.output_dir) / "config.json");
    out << json{{"config", ConfigToJson(config)}, {"config_hash", hash}}
               .dump(2)
        << '\n';
  }

  RunOutcome outcome;
  outcome.records.resize(config.seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < config.seeds.size(); i = next++) {
      try {
        outcome.records[i] = RunSeed(config, hash, config.seeds[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads =
      std::min<int>(config.workers, static_cast<int>(config.seeds.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  json status = {{"config_hash", hash},
                 {"completed_seeds", json::array()},
                 {"failed_seeds", json::object()}};
  for (const RunRecord& r : outcome.records) {
    if (r.ok()) {
      status["completed_seeds"].push_back(r.seed);
    } else {
      status["failed_seeds"][std::to_string(r.seed)] = r.error;
      outcome.partial = true;
    }
  }
  status["partial"] = outcome.partial;
  outcome.summary = Summarize(outcome.records);
  WriteSummaries(config, outcome.summary);
  WriteUsage(config, outcome.records);
  std::ofstream out = OpenOrThrow(fs::path(config.output_dir) / "status.json");
  out << status.dump(2) << '\n';
  return outcome;
}

}  // namespace raps::bench
