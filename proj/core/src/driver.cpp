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

#include "masfuzz/driver.hpp"

#include <algorithm>
#include <set>

#include "masfuzz/ctoken.hpp"
#include "masfuzz/error.hpp"

namespace masfuzz {

std::string_view driver_state_name(DriverState s) {
  switch (s) {
    case DriverState::kGenerated:
      return "generated";
    case DriverState::kCompiled:
      return "compiled";
    case DriverState::kCompileFailed:
      return "compile_failed";
    case DriverState::kExecuted:
      return "executed";
    case DriverState::kMutated:
      return "mutated";
    case DriverState::kRetired:
      return "retired";
  }
  return "generated";
}

DriverState driver_state_from_name(std::string_view name) {
  if (name == "generated") return DriverState::kGenerated;
  if (name == "compiled") return DriverState::kCompiled;
  if (name == "compile_failed") return DriverState::kCompileFailed;
  if (name == "executed") return DriverState::kExecuted;
  if (name == "mutated") return DriverState::kMutated;
  if (name == "retired") return DriverState::kRetired;
  throw FormatError("unknown driver state: " + std::string(name));
}

void advance_driver(FuzzDriver &driver, DriverState next) {
  bool ok = false;
  switch (driver.state) {
    case DriverState::kGenerated:
      ok = next == DriverState::kCompiled || next == DriverState::kCompileFailed;
      break;
    case DriverState::kCompileFailed:
      // Repair retries stay here until the cap retires the driver.
      ok = next == DriverState::kCompiled || next == DriverState::kCompileFailed ||
           next == DriverState::kRetired;
      if (next == DriverState::kCompileFailed && driver.repair_attempts > kMaxRepairAttempts) {
        ok = false;
      }
      break;
    case DriverState::kCompiled:
      ok = next == DriverState::kExecuted || next == DriverState::kRetired;
      break;
    case DriverState::kExecuted:
      // One mutation per stagnant driver: mutated is terminal, so a
      // second mutation request is a forbidden transition.
      ok = next == DriverState::kMutated || next == DriverState::kRetired;
      break;
    case DriverState::kMutated:
    case DriverState::kRetired:
      ok = false;
      break;
  }
  if (!ok) {
    throw PreconditionError("illegal driver transition " +
                            std::string(driver_state_name(driver.state)) + " -> " +
                            std::string(driver_state_name(next)) + " for " + driver.id);
  }
  driver.state = next;
}

std::vector<std::string> extract_driver_sequence(const std::string &source,
                                                 const LibraryModel &model) {
  std::vector<std::string> out;
  std::vector<CToken> toks = tokenize_c(source);
  for (std::size_t idx : call_expression_heads(toks)) {
    const std::string &name = toks[idx].text;
    if (model.contains(name)) out.push_back(name);
  }
  return out;
}

TaggedSequence tagged_driver_sequence(const FuzzDriver &driver, const SequencePool &pool,
                                      const LibraryModel &model) {
  std::set<std::string> ue_apis, mp_apis, sem_apis;
  auto collect = [&](const char *key, std::set<std::string> *into) {
    auto it = driver.sequences_used.find(key);
    if (it == driver.sequences_used.end()) return;
    const ApiSequence *seq = pool.find(it->second);
    if (seq == nullptr) return;
    into->insert(seq->apis.begin(), seq->apis.end());
  };
  collect("UE", &ue_apis);
  collect("MP", &mp_apis);
  collect("SEM", &sem_apis);

  Dimension primary = Dimension::kUe;
  if (driver.sequences_used.count("UE")) {
    primary = Dimension::kUe;
  } else if (driver.sequences_used.count("MP")) {
    primary = Dimension::kMp;
  } else if (driver.sequences_used.count("SEM")) {
    primary = Dimension::kSem;
  }

  TaggedSequence out;
  for (const std::string &name : extract_driver_sequence(driver.source, model)) {
    Dimension tag = primary;
    if (ue_apis.count(name)) {
      tag = Dimension::kUe;
    } else if (mp_apis.count(name)) {
      tag = Dimension::kMp;
    } else if (sem_apis.count(name)) {
      tag = Dimension::kSem;
    }
    out.push_back({name, tag});
  }
  return out;
}

}  // namespace masfuzz
