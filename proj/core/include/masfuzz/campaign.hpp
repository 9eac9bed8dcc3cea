// Copyright 2026 The masfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MASFUZZ_CAMPAIGN_HPP_
#define MASFUZZ_CAMPAIGN_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "masfuzz/crash.hpp"
#include "masfuzz/executor.hpp"
#include "masfuzz/miner.hpp"
#include "masfuzz/oracle.hpp"
#include "masfuzz/scanner.hpp"
#include "masfuzz/scheduler.hpp"
#include "masfuzz/synthesizer.hpp"

namespace masfuzz {

/// Oracle backend selection; one backend serves all three oracle roles.
struct OracleSelection {
  std::string mode = "stub";  // "stub" or "http"
  HttpOracleConfig http;
  std::string api_key_env = "MASFUZZ_API_KEY";
};

struct ExecutorSelection {
  std::string mode = "libfuzzer";  // "libfuzzer" or "simulate"
  std::string simspec_path;
  std::int64_t grace_quantum_ms = 1000;
  int per_input_timeout_s = 5;
};

/// Everything one campaign needs, parsed from a single config file;
/// the CLI overlays seed/budget/backend flags afterwards.
struct CampaignConfig {
  std::string library_root;
  std::string workdir;
  std::uint64_t rng_seed = 1;
  ScanConfig scan;
  MinerConfig miner;
  DimensionWeights weights;
  SchedulerConfig scheduler;
  OracleSelection oracles;
  ExecutorSelection executor;
  ToolchainConfig toolchain;
  int rounds = 1;  // driver-generation rounds (one driver per API per round)
};

/// Parses the config JSON (masfuzz.config/1); unknown keys are ignored.
CampaignConfig parse_campaign_config(const std::string &json_text);

/// Existence and range checks; throws PreconditionError naming the
/// offending field.
void validate_campaign_config(const CampaignConfig &config);

/// "90" (seconds), "90s", "15m", "2h" -> milliseconds.
std::int64_t parse_duration_ms(const std::string &text);

struct StageTiming {
  std::string stage;
  std::int64_t elapsed_ms = 0;
};

struct MutationLogEntry {
  std::string parent_id;
  std::string child_id;
  std::string pivot_api;
  std::string injected_sequence;
  std::string strategy;
};

struct CampaignReport {
  std::string status = "completed";  // completed | budget_exhausted | fatal
  std::vector<StageTiming> stage_timings;
  std::map<std::string, int> sequence_counts;  // dimension name -> mined count
  int drivers_generated = 0;
  int drivers_compiled = 0;
  int drivers_retired = 0;
  std::vector<DriverRunRecord> schedule_records;
  std::vector<MutationLogEntry> mutations;
  std::vector<CoverageSample> coverage_curve;
  std::int64_t consumed_ms = 0;
  std::int64_t global_branches = 0;
  int unique_crashes = 0;
  int api_misuse = 0;
  int library_bugs = 0;
  int unclassified = 0;
  std::vector<std::string> crash_keys;
};

std::string serialize_report(const CampaignReport &report);
CampaignReport deserialize_report(const std::string &text);

/// Plain-text rendering for the report subcommand.
std::string render_report_text(const CampaignReport &report);

/// Exit statuses of Campaign::run.
inline constexpr int kExitCompleted = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitBudgetExhausted = 3;

/// Drives the pipeline against the working directory: mine writes
/// model.json and sequences.json, generate fills drivers/ and corpus/,
/// schedule executes under coverage/ bookkeeping, triage fills
/// crashes/, report renders report.json. Each stage resumes from the
/// previous stage's artifacts and raises StageDependencyError when a
/// prerequisite artifact is missing.
class Campaign {
 public:
  explicit Campaign(CampaignConfig config);

  /// All stages in order, skipping those whose artifacts already
  /// exist. Returns an exit status.
  int run();

  void mine();
  void generate();
  void schedule();
  /// Decision table without execution.
  std::string schedule_dry_run();
  void triage();
  CampaignReport report();

  const CampaignConfig &config() const { return cfg_; }

 private:
  struct ScheduleState;

  std::string path(const std::string &rel) const;
  void require_artifact(const std::string &rel, const std::string &stage) const;
  void load_mined();
  void load_drivers();
  void save_drivers();
  std::unique_ptr<GenerationOracle> make_generation_oracle();
  std::unique_ptr<SemanticOracle> make_semantic_oracle();
  std::unique_ptr<AnalysisOracle> make_analysis_oracle();
  std::unique_ptr<DriverCompiler> make_compiler();
  std::unique_ptr<DriverExecutor> make_executor();
  void compile_with_repairs(FuzzDriver &driver, DriverCompiler &compiler,
                            GenerationOracle &oracle);
  void write_driver_source(const FuzzDriver &driver);
  void write_corpus(const FuzzDriver &driver, GenerationOracle &oracle);
  void save_schedule_state(const ScheduleState &state);
  std::optional<ScheduleState> load_schedule_state();

  CampaignConfig cfg_;
  LibraryModel model_;
  SequencePool pool_;
  std::vector<SemanticDescription> descriptions_;
  std::vector<SemanticRelation> relations_;
  std::deque<FuzzDriver> drivers_;
  std::vector<std::string> library_objects_;
  std::vector<std::string> replay_objects_;
  std::string replay_runner_;
  bool mined_loaded_ = false;
  bool drivers_loaded_ = false;
};

}  // namespace masfuzz

#endif  // MASFUZZ_CAMPAIGN_HPP_
