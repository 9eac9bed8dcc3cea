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

#include "masfuzz/coverage.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "masfuzz/error.hpp"

namespace masfuzz {

using nlohmann::json;

std::string BranchHit::key() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(index);
}

namespace {

std::string excerpt(const std::string &text) {
  return text.size() <= 120 ? text : text.substr(0, 120) + "...";
}

}  // namespace

CoverageReport parse_llvm_cov_export(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception &e) {
    throw FormatError(std::string("coverage export is not JSON: ") + e.what() + " in " +
                      excerpt(json_text));
  }
  CoverageReport out;
  if (!doc.contains("data") || !doc["data"].is_array()) {
    throw FormatError("coverage export lacks a data array: " + excerpt(json_text));
  }
  for (const auto &datum : doc["data"]) {
    if (!datum.contains("files")) continue;
    for (const auto &file : datum["files"]) {
      std::string filename = file.value("filename", "");
      if (filename.empty() || !file.contains("branches")) continue;
      for (const auto &br : file["branches"]) {
        // [line_start, col_start, line_end, col_end, count_true,
        //  count_false, file_id, expanded_file_id, kind]
        if (!br.is_array() || br.size() < 6) {
          throw FormatError("malformed branch record: " + excerpt(br.dump()));
        }
        int line = br[0].get<int>();
        int col = br[1].get<int>();
        std::int64_t taken_true = br[4].get<std::int64_t>();
        std::int64_t taken_false = br[5].get<std::int64_t>();
        if (taken_true > 0) out.branches.push_back({filename, line, col * 2});
        if (taken_false > 0) out.branches.push_back({filename, line, col * 2 + 1});
      }
    }
  }
  return out;
}

CoverageReport parse_native_coverage(const std::string &json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception &e) {
    throw FormatError(std::string("coverage artifact is not JSON: ") + e.what() + " in " +
                      excerpt(json_text));
  }
  if (!doc.contains("branches") || !doc["branches"].is_array()) {
    throw FormatError("coverage artifact lacks a branches array: " + excerpt(json_text));
  }
  CoverageReport out;
  for (const auto &br : doc["branches"]) {
    BranchHit hit;
    hit.file = br.value("file", "");
    hit.line = br.value("line", 0);
    hit.index = br.value("index", 0);
    if (hit.file.empty()) {
      throw FormatError("branch record without file: " + excerpt(br.dump()));
    }
    out.branches.push_back(std::move(hit));
  }
  return out;
}

CoverageLedger CoverageLedger::init(const LibraryModel &model) {
  CoverageLedger ledger;
  for (const auto &api : model.apis) {
    auto it = model.branch_totals.find(api.name);
    std::int64_t total = it == model.branch_totals.end() ? 0 : it->second;
    ledger.per_api_[api.name] = ApiCoverage{0, total};
    if (!api.body_file.empty() && api.body_line_end >= api.body_line_begin) {
      ledger.spans_.push_back(Span{api.body_file, api.body_line_begin, api.body_line_end,
                                   api.name});
    }
  }
  return ledger;
}

double CoverageLedger::avg_cov(const std::vector<std::string> &driver_apis) const {
  std::int64_t covered = 0, total = 0;
  for (const auto &name : driver_apis) {
    auto it = per_api_.find(name);
    if (it == per_api_.end()) {
      throw PreconditionError("coverage ledger not seeded for API " + name);
    }
    covered += it->second.covered;
    total += it->second.total;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(covered) / static_cast<double>(total);
}

std::set<std::string> CoverageLedger::ingest(const CoverageReport &report,
                                             const std::string &driver_id,
                                             std::int64_t timestamp_ms) {
  std::set<std::string> fresh;
  for (const BranchHit &hit : report.branches) {
    std::string key = hit.key();
    if (global_branches_.count(key)) continue;
    if (!fresh.insert(key).second) continue;
    // Report filenames may be absolute while spans are tree-relative;
    // suffix matching bridges the two.
    for (const Span &span : spans_) {
      if (hit.line < span.begin || hit.line > span.end) continue;
      if (hit.file != span.file && !hit.file.ends_with("/" + span.file)) continue;
      ApiCoverage &cov = per_api_[span.api];
      if (cov.covered < cov.total) ++cov.covered;
      break;
    }
  }
  global_branches_.insert(fresh.begin(), fresh.end());
  history_.push_back(HistoryEntry{driver_id, static_cast<std::int64_t>(fresh.size()),
                                  timestamp_ms});
  return fresh;
}

void CoverageLedger::restore(std::map<std::string, ApiCoverage> per_api,
                             std::set<std::string> global, std::vector<HistoryEntry> history) {
  per_api_ = std::move(per_api);
  global_branches_ = std::move(global);
  history_ = std::move(history);
}

bool SequenceHistory::add(const std::string &driver_id, TaggedSequence seq) {
  if (!driver_ids_.insert(driver_id).second) return false;
  entries_.push_back({driver_id, std::move(seq)});
  return true;
}

bool SequenceHistory::contains_driver(const std::string &driver_id) const {
  return driver_ids_.count(driver_id) > 0;
}

double novelty(const TaggedSequence &seq, const SequenceHistory &history,
               const DimensionWeights &weights) {
  if (seq.empty()) return 0.0;
  if (history.entries().empty()) return 1.0;
  double best = -1.0;
  for (const SequenceHistory::Entry &past : history.entries()) {
    double d = weighted_edit_distance(seq, past.seq, weights);
    if (best < 0.0 || d < best) best = d;
  }
  return best / static_cast<double>(seq.size());
}

}  // namespace masfuzz
