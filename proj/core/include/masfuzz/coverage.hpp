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

#ifndef MASFUZZ_COVERAGE_HPP_
#define MASFUZZ_COVERAGE_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "masfuzz/edit_distance.hpp"
#include "masfuzz/model.hpp"

namespace masfuzz {

/// One exercised conditional edge, keyed "file:line:index".
struct BranchHit {
  std::string file;
  int line = 0;
  int index = 0;

  std::string key() const;
  auto operator<=>(const BranchHit &) const = default;
};

/// A set of exercised branches as reported by one execution slot.
struct CoverageReport {
  std::vector<BranchHit> branches;
};

/// Parses the LLVM coverage JSON export of an instrumented binary. Each
/// branch record contributes its true and false arms as separate edges.
/// Throws FormatError with a raw excerpt on malformed input.
CoverageReport parse_llvm_cov_export(const std::string &json_text);

/// Parses this tool's own coverage artifact ({"schema": ..., "branches":
/// [{file,line,index}]}), written by the executors.
CoverageReport parse_native_coverage(const std::string &json_text);

/// Per-API and global branch accounting. covered and global_branches
/// only grow; totals are fixed at campaign start from the static counts.
class CoverageLedger {
 public:
  struct ApiCoverage {
    std::int64_t covered = 0;
    std::int64_t total = 0;
  };
  struct HistoryEntry {
    std::string driver_id;
    std::int64_t new_branches = 0;
    std::int64_t timestamp_ms = 0;
  };

  CoverageLedger() = default;
  /// Seeds per-API totals from the model's static branch counts and
  /// records body spans for branch attribution.
  static CoverageLedger init(const LibraryModel &model);

  /// Average coverage over a driver's unique APIs: sum covered / sum
  /// total, 0 when the total sum is 0. Unknown names are a hard error.
  double avg_cov(const std::vector<std::string> &driver_apis) const;

  /// Merges a report; returns the branch keys not seen before. Newly
  /// seen branches inside an API's body span raise that API's covered
  /// count (clamped at its static total).
  std::set<std::string> ingest(const CoverageReport &report, const std::string &driver_id,
                               std::int64_t timestamp_ms);

  const std::map<std::string, ApiCoverage> &per_api() const { return per_api_; }
  const std::set<std::string> &global_branches() const { return global_branches_; }
  const std::vector<HistoryEntry> &history() const { return history_; }

  /// Restores persisted state; used by campaign resume.
  void restore(std::map<std::string, ApiCoverage> per_api, std::set<std::string> global,
               std::vector<HistoryEntry> history);

 private:
  struct Span {
    std::string file;
    int begin = 0;
    int end = 0;
    std::string api;
  };

  std::map<std::string, ApiCoverage> per_api_;
  std::set<std::string> global_branches_;
  std::vector<HistoryEntry> history_;
  std::vector<Span> spans_;
};

/// Effective API sequences of executed drivers; a driver's sequence is
/// added exactly once, after its execution.
class SequenceHistory {
 public:
  struct Entry {
    std::string driver_id;
    TaggedSequence seq;
  };

  bool add(const std::string &driver_id, TaggedSequence seq);
  const std::vector<Entry> &entries() const { return entries_; }
  bool contains_driver(const std::string &driver_id) const;

 private:
  std::vector<Entry> entries_;
  std::set<std::string> driver_ids_;
};

/// Normalized minimum weighted edit distance from seq to every executed
/// sequence; 1 when the history is empty, 0 when seq already executed.
double novelty(const TaggedSequence &seq, const SequenceHistory &history,
               const DimensionWeights &weights);

}  // namespace masfuzz

#endif  // MASFUZZ_COVERAGE_HPP_
