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

#ifndef MASFUZZ_SCHEDULER_HPP_
#define MASFUZZ_SCHEDULER_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "masfuzz/coverage.hpp"
#include "masfuzz/driver.hpp"
#include "masfuzz/executor.hpp"
#include "masfuzz/model.hpp"

namespace masfuzz {

/// Knobs of the coverage-guided time scheduler.
struct SchedulerConfig {
  double theta = 0.9;      // skip threshold on avg coverage
  double beta = 0.2;       // floor inside max(avgCov, beta)
  double base = 2.0;       // annealing base B
  double alpha_min = 0.5;  // clamp bounds for the time coefficient
  double alpha_max = 2.0;
  std::int64_t total_budget_ms = 0;
  std::int64_t quantum_ms = 1000;  // assigned-time floor when positive

  /// Throws PreconditionError outside 0<theta<=1, 0<beta<=1, base>0,
  /// alpha_min<=alpha_max, total_budget_ms>0.
  void validate() const;
};

enum class ScheduleAction { kSkip, kExecute };

struct ScheduleDecision {
  std::string driver_id;
  ScheduleAction action = ScheduleAction::kSkip;
  double avg_cov = 0.0;
  double alpha_t = 0.0;
  std::int64_t base_time_ms = 0;  // t = T/|D| * alpha_t
  double omega_novelty = 0.0;
  std::int64_t assigned_ms = 0;
};

/// clamp(B^(i/n - 1), alpha_min, alpha_max). The exponent is (i/n) - 1,
/// so the coefficient rises from 1/B toward 1 across the driver list.
double time_coefficient(std::size_t i, std::size_t n, const SchedulerConfig &cfg);

/// Read-only campaign state a scheduling decision depends on.
struct SchedulerState {
  const CoverageLedger *ledger = nullptr;
  const SequenceHistory *history = nullptr;
  const LibraryModel *model = nullptr;
  const SequencePool *pool = nullptr;
  DimensionWeights weights;
  std::int64_t remaining_ms = 0;
  std::size_t driver_count = 0;
};

/// One driver's time slice: skip when avg coverage exceeds theta, else
/// assigned = (t / max(avgCov, beta)) * novelty, capped at the
/// remaining budget and floored at one quantum when positive. Throws
/// PreconditionError when the remaining budget is already spent.
ScheduleDecision assign_time(const FuzzDriver &driver, std::size_t idx,
                             const SchedulerState &state, const SchedulerConfig &cfg);

/// Result of a mutation request issued for a stagnant driver.
struct MutationRequestResult {
  bool planned = false;        // false: no unused sequence material; parent retires
  FuzzDriver *child = nullptr;  // compiled child ready to run, null if it fell over
};

/// Supplied by the campaign layer: plans and applies one mutation,
/// compiles the child, and registers it. The parent has already been
/// advanced to `mutated` when `planned` comes back true.
using MutateFn = std::function<MutationRequestResult(FuzzDriver &parent)>;

struct CrashEvent {
  std::string driver_id;
  RawCrash crash;
};

struct CoverageSample {
  std::int64_t at_ms = 0;
  std::int64_t global_branches = 0;
};

struct DriverRunRecord {
  ScheduleDecision decision;
  std::int64_t t_actual_ms = 0;   // parent plus child runs
  std::int64_t new_branches = 0;  // parent run only
  std::int64_t executions = 0;
  bool mutated = false;
  bool retired = false;
  std::string child_id;
  std::int64_t child_new_branches = 0;
};

struct ScheduleOutcome {
  std::vector<DriverRunRecord> records;
  std::vector<CrashEvent> crashes;
  std::vector<CoverageSample> curve;
  std::int64_t consumed_ms = 0;
  bool budget_exhausted = false;
};

/// One pass over the driver list: decide, execute, mutate-once on an
/// empty newCov and re-execute the child, subtracting both runs' actual
/// time from the budget. Coverage merges into the ledger and each
/// executed driver's sequence lands in the history. Executor startup
/// failures retire the driver and the loop continues; a spent budget
/// ends the pass mid-list.
ScheduleOutcome run_campaign(const std::vector<FuzzDriver *> &drivers, DriverExecutor &executor,
                             CoverageLedger &ledger, SequenceHistory &history,
                             const LibraryModel &model, const SequencePool &pool,
                             const DimensionWeights &weights, const SchedulerConfig &cfg,
                             const MutateFn &mutate);

}  // namespace masfuzz

#endif  // MASFUZZ_SCHEDULER_HPP_
