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

// raps: train, evaluate and compare agents on the built-in tasks.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure,
// 4 partial results (some seed failed).

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "raps/bench/config.h"
#include "raps/bench/report.h"
#include "raps/bench/runner.h"
#include "raps/errors.h"
#include "raps/rl/snapshot.h"
#include "raps/tasks/catalog.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitPartial = 4;

using raps::bench::ExperimentConfig;

int Run(const std::string& config_path, const std::string& output_dir,
        int workers) {
  ExperimentConfig config = raps::bench::LoadConfig(config_path);
  // flags beat environment variables, which beat the file
  if (!output_dir.empty()) config.output_dir = output_dir;
  if (workers > 0) config.workers = workers;
  config.Validate();
  std::cout << "task " << config.task << ", mode "
            << raps::pamdp::ActionModeName(config.mode) << ", "
            << config.seeds.size() << " seed(s) -> " << config.output_dir
            << '\n';
  const raps::bench::RunOutcome outcome = raps::bench::RunExperiment(config);
  for (const raps::bench::RunRecord& r : outcome.records) {
    if (r.ok()) {
      const auto& last = r.curve.back();
      std::printf("seed %llu: success %.3f, return %.3f after %lld updates\n",
                  static_cast<unsigned long long>(r.seed),
                  last.eval.success_rate, last.eval.mean_return,
                  static_cast<long long>(last.training_steps));
    } else {
      std::printf("seed %llu failed: %s\n",
                  static_cast<unsigned long long>(r.seed), r.error.c_str());
    }
  }
  if (!outcome.summary.empty()) {
    const raps::bench::SummaryRow& s = outcome.summary.back();
    std::printf("final mean success %.3f [%.3f, %.3f] over %d seed(s)\n",
                s.success.mean, s.success.low, s.success.high, s.success.n);
  }
  if (outcome.partial) {
    std::cerr << "partial results: see status.json\n";
    return kExitPartial;
  }
  return kExitOk;
}

int Compare(const std::vector<std::string>& dirs, const std::string& out) {
  const raps::bench::CompareReport report = raps::bench::Compare(dirs, out);
  for (const raps::bench::CompareRow& row : report.rows) {
    std::printf("%-24s %-4s %-16s cap %-10g ", row.run.c_str(),
                row.mode.c_str(), raps::bench::ClockName(row.clock), row.cap);
    if (row.has_value) {
      std::printf("success %.3f [%.3f, %.3f]\n", row.at_cap.success,
                  row.at_cap.ci_low, row.at_cap.ci_high);
    } else {
      std::printf("no evaluation within the cap\n");
    }
  }
  for (const std::string& file : report.files) std::cout << "wrote " << file << '\n';
  return kExitOk;
}

int Eval(const std::string& snapshot, int episodes, std::uint64_t seed) {
  const raps::rl::LoadedSnapshot loaded = raps::rl::LoadSnapshot(snapshot);
  const nlohmann::json& meta = loaded.header.at("metadata");
  try {
    const raps::sim::TaskSpec task = raps::tasks::TaskFromJson(meta.at("task"));
    const auto dof = meta.value("yaw_enabled", false)
                         ? raps::primitives::DofMode::kPositionYaw
                         : raps::primitives::DofMode::kPositionOnly;
    const auto library = raps::primitives::DefaultLibrary(dof).Subset(
        meta.at("primitives").get<std::vector<std::string>>());
    const auto obs_mode = meta.value("observation", std::string("state")) ==
                                  "state+grid"
                              ? raps::sim::ObservationMode::kStateGrid
                              : raps::sim::ObservationMode::kState;
    raps::pamdp::Environment env(task, library, loaded.policy.mode, obs_mode);
    const raps::rl::EvalSummary summary =
        raps::rl::Evaluate(loaded.policy, env, episodes, seed);
    std::printf("%s (%s): success %.3f, mean return %.3f over %d episodes\n",
                task.name.c_str(), raps::pamdp::ActionModeName(env.mode()),
                summary.success_rate, summary.mean_return, summary.episodes);
  } catch (const nlohmann::json::exception& e) {
    throw raps::ConfigError(std::string("snapshot metadata: ") + e.what());
  }
  return kExitOk;
}

int ListTasks() {
  const raps::tasks::TaskCatalog catalog = raps::tasks::BuiltinCatalog();
  for (const std::string& name : catalog.Names()) {
    const raps::sim::TaskSpec& task = catalog.Get(name);
    std::printf("%-16s H=%-3d steps=%-4d objects=%zu%s\n", name.c_str(),
                task.high_level_horizon, task.max_low_level_steps,
                task.objects.size(),
                task.IsMultiTask() ? " (sequential)" : "");
  }
  return kExitOk;
}

int ListPrimitives(bool yaw) {
  const auto library = raps::primitives::DefaultLibrary(
      yaw ? raps::primitives::DofMode::kPositionYaw
          : raps::primitives::DofMode::kPositionOnly);
  for (const raps::primitives::PrimitiveSpec& spec : library.specs()) {
    std::printf("%-22s args=%d H=%d\n", spec.name.c_str(), spec.ArgDim(),
                spec.Horizon());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RAPS toolkit: primitives, PPO and benchmarks"};
  app.require_subcommand(1);

  std::string config_path, output_dir;
  int workers = 0;
  CLI::App* run = app.add_subcommand("run", "train every seed of a config");
  run->add_option("config", config_path, "experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("-o,--output-dir", output_dir, "overrides output_dir");
  run->add_option("-w,--workers", workers, "parallel seeds")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> run_dirs;
  std::string report_dir = "report";
  CLI::App* compare =
      app.add_subcommand("compare", "tables and charts across run dirs");
  compare->add_option("runs", run_dirs, "run directories")->required();
  compare->add_option("-o,--out", report_dir, "report directory");

  std::string snapshot;
  int episodes = 5;
  std::uint64_t eval_seed = 0;
  CLI::App* eval = app.add_subcommand("eval", "roll out a saved policy");
  eval->add_option("snapshot", snapshot, "snapshot.bin")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("-n,--episodes", episodes, "episodes")
      ->check(CLI::PositiveNumber);
  eval->add_option("-s,--seed", eval_seed, "seed of the first episode");

  app.add_subcommand("list-tasks", "built-in tasks");
  bool yaw = false;
  CLI::App* prims = app.add_subcommand("list-primitives", "default library");
  prims->add_flag("--yaw", yaw, "include the wrist primitives");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return Run(config_path, output_dir, workers);
    if (*compare) return Compare(run_dirs, report_dir);
    if (*eval) return Eval(snapshot, episodes, eval_seed);
    if (app.got_subcommand("list-tasks")) return ListTasks();
    if (*prims) return ListPrimitives(yaw);
  } catch (const raps::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    if (!e.diagnostics().empty()) std::cerr << e.diagnostics() << '\n';
    return kExitNumeric;
  } catch (const raps::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const raps::InputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
