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

#include "masfuzz/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "masfuzz/error.hpp"

namespace masfuzz {

void SchedulerConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw PreconditionError("theta must be in (0, 1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw PreconditionError("beta must be in (0, 1]");
  if (!(base > 0.0)) throw PreconditionError("base must be positive");
  if (!(alpha_min <= alpha_max)) throw PreconditionError("alpha_min must not exceed alpha_max");
  if (total_budget_ms <= 0) throw PreconditionError("total budget must be positive");
}

double time_coefficient(std::size_t i, std::size_t n, const SchedulerConfig &cfg) {
  if (n == 0 || i >= n) throw PreconditionError("driver index out of range");
  double exponent = static_cast<double>(i) / static_cast<double>(n) - 1.0;
  double alpha = std::pow(cfg.base, exponent);
  return std::clamp(alpha, cfg.alpha_min, cfg.alpha_max);
}

ScheduleDecision assign_time(const FuzzDriver &driver, std::size_t idx,
                             const SchedulerState &state, const SchedulerConfig &cfg) {
  if (state.remaining_ms <= 0) throw PreconditionError("campaign budget exhausted");

  ScheduleDecision d;
  d.driver_id = driver.id;

  std::vector<std::string> seq = extract_driver_sequence(driver.source, *state.model);
  std::vector<std::string> unique_apis;
  std::set<std::string> seen;
  for (const auto &api : seq) {
    if (seen.insert(api).second) unique_apis.push_back(api);
  }
  d.avg_cov = state.ledger->avg_cov(unique_apis);
  if (d.avg_cov > cfg.theta) {
    d.action = ScheduleAction::kSkip;
    return d;
  }

  d.action = ScheduleAction::kExecute;
  d.alpha_t = time_coefficient(idx, state.driver_count, cfg);
  double base_time =
      static_cast<double>(state.remaining_ms) / static_cast<double>(state.driver_count) *
      d.alpha_t;
  d.base_time_ms = static_cast<std::int64_t>(base_time);

  TaggedSequence tagged = tagged_driver_sequence(driver, *state.pool, *state.model);
  d.omega_novelty = novelty(tagged, *state.history, state.weights);

  double assigned = base_time / std::max(d.avg_cov, cfg.beta) * d.omega_novelty;
  std::int64_t assigned_ms = static_cast<std::int64_t>(assigned);
  assigned_ms = std::min(assigned_ms, state.remaining_ms);
  if (assigned_ms > 0 && assigned_ms < cfg.quantum_ms) {
    assigned_ms = std::min(cfg.quantum_ms, state.remaining_ms);
  }
  d.assigned_ms = assigned_ms;
  return d;
}

ScheduleOutcome run_campaign(const std::vector<FuzzDriver *> &drivers, DriverExecutor &executor,
                             CoverageLedger &ledger, SequenceHistory &history,
                             const LibraryModel &model, const SequencePool &pool,
                             const DimensionWeights &weights, const SchedulerConfig &cfg,
                             const MutateFn &mutate) {
  cfg.validate();
  ScheduleOutcome outcome;
  std::int64_t remaining = cfg.total_budget_ms;

  auto run_one = [&](FuzzDriver &driver, std::int64_t budget,
                     DriverRunRecord &record) -> std::pair<std::int64_t, bool> {
    // Returns (new branch count, executor ok).
    ExecutionResult result = executor.execute(driver, budget);
    remaining -= result.t_actual_ms;
    outcome.consumed_ms += result.t_actual_ms;
    record.t_actual_ms += result.t_actual_ms;
    record.executions += result.executions;
    for (auto &crash : result.crashes) {
      outcome.crashes.push_back({driver.id, std::move(crash)});
    }
    if (result.executor_error) {
      advance_driver(driver, DriverState::kRetired);
      record.retired = true;
      return {0, false};
    }
    advance_driver(driver, DriverState::kExecuted);
    std::set<std::string> fresh = ledger.ingest(result.coverage, driver.id, outcome.consumed_ms);
    history.add(driver.id, tagged_driver_sequence(driver, pool, model));
    outcome.curve.push_back(
        {outcome.consumed_ms, static_cast<std::int64_t>(ledger.global_branches().size())});
    return {static_cast<std::int64_t>(fresh.size()), true};
  };

  for (std::size_t i = 0; i < drivers.size(); ++i) {
    if (remaining <= 0) {
      outcome.budget_exhausted = true;
      break;
    }
    FuzzDriver &driver = *drivers[i];

    SchedulerState state{&ledger, &history, &model,  &pool,
                         weights, remaining, drivers.size()};
    DriverRunRecord record;
    record.decision = assign_time(driver, i, state, cfg);
    if (record.decision.action == ScheduleAction::kSkip || record.decision.assigned_ms <= 0) {
      // Zero assignment (a duplicate sequence) is a no-op slot; a
      // driver that never ran is not mutation-eligible.
      outcome.records.push_back(std::move(record));
      continue;
    }

    auto [new_branches, ok] = run_one(driver, record.decision.assigned_ms, record);
    record.new_branches = new_branches;

    if (ok && new_branches == 0) {
      // Alg. 1 stagnation path: one mutation, then one re-execution of
      // the child with the same assignment (capped by what is left).
      MutationRequestResult req = mutate(driver);
      if (!req.planned) {
        advance_driver(driver, DriverState::kRetired);
        record.retired = true;
      } else {
        advance_driver(driver, DriverState::kMutated);
        record.mutated = true;
        if (req.child != nullptr) {
          record.child_id = req.child->id;
          std::int64_t child_budget = std::min(record.decision.assigned_ms, remaining);
          if (child_budget > 0) {
            DriverRunRecord child_stats;
            auto [child_new, child_ok] = run_one(*req.child, child_budget, child_stats);
            record.t_actual_ms += child_stats.t_actual_ms;
            record.executions += child_stats.executions;
            record.child_new_branches = child_ok ? child_new : 0;
          }
        }
      }
    }
    outcome.records.push_back(std::move(record));
  }
  if (remaining <= 0) outcome.budget_exhausted = true;
  return outcome;
}

}  // namespace masfuzz
