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

#ifndef MASFUZZ_CRASH_HPP_
#define MASFUZZ_CRASH_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "masfuzz/driver.hpp"
#include "masfuzz/model.hpp"
#include "masfuzz/oracle.hpp"
#include "masfuzz/scheduler.hpp"

namespace masfuzz {

struct StackFrame {
  std::string symbol;
  std::string file;
  int line = 0;
};

enum class SanitizerKind {
  kAddrViolation,
  kUninitRead,
  kLeak,
  kAssertion,
  kTimeout,
  kOther,
};

std::string_view sanitizer_kind_name(SanitizerKind k);
SanitizerKind sanitizer_kind_from_name(std::string_view name);

enum class Classification { kUnclassified, kApiMisuse, kLibraryBug };

std::string_view classification_name(Classification c);
Classification classification_from_name(std::string_view name);

/// One deduplicated crash with its triage state.
struct CrashRecord {
  std::string driver_id;
  std::string input;
  std::vector<std::string> alternate_inputs;  // from deduplicated duplicates
  SanitizerKind sanitizer_kind = SanitizerKind::kOther;
  std::vector<StackFrame> stack;
  std::string dedup_key;
  Classification classification = Classification::kUnclassified;
  std::string rationale;
  bool needs_review = false;  // oracle failure left it unclassified
  std::string report_text;
  std::string repair_driver_id;  // set once a misuse repair is spawned
};

/// Extracts the sanitizer kind and stack frames from raw report text.
/// Unparsable reports come back as (kOther, empty stack).
std::pair<SanitizerKind, std::vector<StackFrame>> parse_crash_report(const std::string &text);

/// Pure function of the top three in-library frames plus the sanitizer
/// kind; filesystem-safe. Falls back to the top three frames overall
/// when no frame resolves into the library.
std::string make_dedup_key(SanitizerKind kind, const std::vector<StackFrame> &stack,
                           const LibraryModel &model);

/// Groups raw crash events into one record per dedup key; duplicate
/// inputs are kept as alternates. Deterministic: records sort by key.
std::vector<CrashRecord> dedup_crashes(const std::vector<CrashEvent> &events,
                                       const LibraryModel &model);

/// Classifies an unclassified record (PreconditionError otherwise)
/// through the analysis oracle, filling classification and rationale.
/// An oracle failure leaves it unclassified with needs_review set.
CrashRecord classify_crash(CrashRecord record, const FuzzDriver &driver,
                           const LibraryModel &model, AnalysisOracle &oracle);

}  // namespace masfuzz

#endif  // MASFUZZ_CRASH_HPP_
