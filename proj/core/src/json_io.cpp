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

#include "masfuzz/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "masfuzz/error.hpp"

namespace masfuzz {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string &path, const std::string &content) {
  fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

namespace {

json parse_with_schema(const std::string &text, const std::string &schema) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("artifact is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object() || doc.value("schema", "") != schema) {
    throw FormatError("artifact schema mismatch, expected " + schema);
  }
  return doc;
}

std::string dump(const json &doc) { return doc.dump(2) + "\n"; }

}  // namespace

// ---------------------------------------------------------------------
// model.json

std::string serialize_model(const LibraryModel &model) {
  json doc;
  doc["schema"] = "masfuzz.model/1";
  doc["root"] = model.root;
  doc["headers"] = model.headers;
  doc["usage_files"] = model.usage_files;
  doc["typedefs"] = model.typedefs;
  doc["branch_totals"] = model.branch_totals;
  json apis = json::array();
  for (const auto &api : model.apis) {
    json a;
    a["name"] = api.name;
    a["return_type"] = api.return_type;
    json params = json::array();
    for (const auto &p : api.params) params.push_back({{"name", p.name}, {"type", p.type}});
    a["params"] = std::move(params);
    a["file"] = api.file;
    a["line"] = api.line;
    a["doc"] = api.doc;
    a["body_file"] = api.body_file;
    a["body_line_begin"] = api.body_line_begin;
    a["body_line_end"] = api.body_line_end;
    a["is_public"] = api.is_public;
    a["needs_oracle"] = api.needs_oracle;
    apis.push_back(std::move(a));
  }
  doc["apis"] = std::move(apis);
  return dump(doc);
}

LibraryModel deserialize_model(const std::string &text) {
  json doc = parse_with_schema(text, "masfuzz.model/1");
  LibraryModel model;
  try {
    model.root = doc.value("root", "");
    model.headers = doc.value("headers", std::vector<std::string>{});
    model.usage_files = doc.value("usage_files", std::vector<std::string>{});
    if (doc.contains("typedefs")) {
      for (const auto &[k, v] : doc["typedefs"].items()) model.typedefs[k] = v;
    }
    if (doc.contains("branch_totals")) {
      for (const auto &[k, v] : doc["branch_totals"].items()) {
        model.branch_totals[k] = v.get<int>();
      }
    }
    for (const auto &a : doc.at("apis")) {
      ApiMetainfo api;
      api.name = a.at("name").get<std::string>();
      api.return_type = a.at("return_type").get<std::string>();
      for (const auto &p : a.value("params", json::array())) {
        api.params.push_back({p.value("name", ""), p.at("type").get<std::string>()});
      }
      api.file = a.value("file", "");
      api.line = a.value("line", 1);
      api.doc = a.value("doc", "");
      api.body_file = a.value("body_file", "");
      api.body_line_begin = a.value("body_line_begin", 0);
      api.body_line_end = a.value("body_line_end", 0);
      api.is_public = a.value("is_public", true);
      api.needs_oracle = a.value("needs_oracle", false);
      model.apis.push_back(std::move(api));
    }
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("model artifact shape error: " + std::string(e.what()));
  }
  return model;
}

// ---------------------------------------------------------------------
// sequences.json

std::string serialize_sequences(const SequencePool &pool,
                                const std::vector<SemanticDescription> &descriptions,
                                const std::vector<SemanticRelation> &relations) {
  json doc;
  doc["schema"] = "masfuzz.sequences/1";
  json seqs = json::array();
  for (const auto &seq : pool.sequences) {
    seqs.push_back({{"id", seq.id},
                    {"apis", seq.apis},
                    {"dimension", std::string(dimension_name(seq.dimension))},
                    {"provenance", seq.provenance},
                    {"used", seq.used}});
  }
  doc["sequences"] = std::move(seqs);
  json descs = json::array();
  for (const auto &d : descriptions) {
    descs.push_back({{"api", d.api},
                     {"summary", d.summary},
                     {"role", d.role},
                     {"preconditions", d.preconditions},
                     {"available", d.available}});
  }
  doc["descriptions"] = std::move(descs);
  json rels = json::array();
  for (const auto &r : relations) {
    rels.push_back({{"predecessor", r.predecessor},
                    {"successor", r.successor},
                    {"rationale", r.rationale}});
  }
  doc["relations"] = std::move(rels);
  return dump(doc);
}

void deserialize_sequences(const std::string &text, SequencePool *pool,
                           std::vector<SemanticDescription> *descriptions,
                           std::vector<SemanticRelation> *relations) {
  json doc = parse_with_schema(text, "masfuzz.sequences/1");
  try {
    if (pool != nullptr) {
      pool->sequences.clear();
      for (const auto &s : doc.at("sequences")) {
        ApiSequence seq;
        seq.id = s.at("id").get<std::string>();
        seq.apis = s.at("apis").get<std::vector<std::string>>();
        seq.dimension = dimension_from_name(s.at("dimension").get<std::string>());
        seq.provenance = s.value("provenance", "");
        seq.used = s.value("used", false);
        pool->sequences.push_back(std::move(seq));
      }
    }
    if (descriptions != nullptr) {
      descriptions->clear();
      for (const auto &d : doc.value("descriptions", json::array())) {
        SemanticDescription desc;
        desc.api = d.at("api").get<std::string>();
        desc.summary = d.value("summary", "");
        desc.role = d.value("role", "");
        desc.preconditions = d.value("preconditions", std::vector<std::string>{});
        desc.available = d.value("available", true);
        descriptions->push_back(std::move(desc));
      }
    }
    if (relations != nullptr) {
      relations->clear();
      for (const auto &r : doc.value("relations", json::array())) {
        relations->push_back({r.at("predecessor").get<std::string>(),
                              r.at("successor").get<std::string>(), r.value("rationale", "")});
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("sequences artifact shape error: " + std::string(e.what()));
  }
}

// ---------------------------------------------------------------------
// drivers/index.json

std::string serialize_drivers(const std::vector<FuzzDriver> &drivers) {
  json doc;
  doc["schema"] = "masfuzz.drivers/1";
  json arr = json::array();
  for (const auto &d : drivers) {
    arr.push_back({{"id", d.id},
                   {"target_api", d.target_api},
                   {"filename", d.filename()},
                   {"sequences_used", d.sequences_used},
                   {"state", std::string(driver_state_name(d.state))},
                   {"repair_attempts", d.repair_attempts},
                   {"lineage", d.lineage}});
  }
  doc["drivers"] = std::move(arr);
  return dump(doc);
}

std::vector<FuzzDriver> deserialize_drivers(const std::string &text) {
  json doc = parse_with_schema(text, "masfuzz.drivers/1");
  std::vector<FuzzDriver> drivers;
  try {
    for (const auto &d : doc.at("drivers")) {
      FuzzDriver driver;
      driver.id = d.at("id").get<std::string>();
      driver.target_api = d.at("target_api").get<std::string>();
      if (d.contains("sequences_used")) {
        for (const auto &[k, v] : d["sequences_used"].items()) {
          driver.sequences_used[k] = v.get<std::string>();
        }
      }
      driver.state = driver_state_from_name(d.at("state").get<std::string>());
      driver.repair_attempts = d.value("repair_attempts", 0);
      driver.lineage = d.value("lineage", "");
      drivers.push_back(std::move(driver));
    }
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("drivers artifact shape error: " + std::string(e.what()));
  }
  return drivers;
}

// ---------------------------------------------------------------------
// coverage/ledger.json

std::string serialize_coverage(const CoverageLedger &ledger, const SequenceHistory &history) {
  json doc;
  doc["schema"] = "masfuzz.coverage/1";
  json per_api = json::object();
  for (const auto &[name, cov] : ledger.per_api()) {
    per_api[name] = {{"covered", cov.covered}, {"total", cov.total}};
  }
  doc["per_api"] = std::move(per_api);
  doc["global_branches"] = ledger.global_branches();
  json hist = json::array();
  for (const auto &h : ledger.history()) {
    hist.push_back({{"driver_id", h.driver_id},
                    {"new_branches", h.new_branches},
                    {"timestamp_ms", h.timestamp_ms}});
  }
  doc["ingest_history"] = std::move(hist);
  json executed = json::array();
  for (const auto &entry : history.entries()) {
    json tokens = json::array();
    for (const auto &tok : entry.seq) {
      tokens.push_back({{"name", tok.name}, {"tag", std::string(dimension_name(tok.tag))}});
    }
    executed.push_back({{"driver_id", entry.driver_id}, {"tokens", std::move(tokens)}});
  }
  doc["executed_sequences"] = std::move(executed);
  return dump(doc);
}

void deserialize_coverage(const std::string &text, CoverageLedger *ledger,
                          SequenceHistory *history) {
  json doc = parse_with_schema(text, "masfuzz.coverage/1");
  try {
    if (ledger != nullptr) {
      std::map<std::string, CoverageLedger::ApiCoverage> per_api;
      for (const auto &[name, cov] : doc.at("per_api").items()) {
        per_api[name] = {cov.at("covered").get<std::int64_t>(),
                         cov.at("total").get<std::int64_t>()};
      }
      std::set<std::string> global;
      for (const auto &key : doc.value("global_branches", json::array())) {
        global.insert(key.get<std::string>());
      }
      std::vector<CoverageLedger::HistoryEntry> hist;
      for (const auto &h : doc.value("ingest_history", json::array())) {
        hist.push_back({h.at("driver_id").get<std::string>(),
                        h.value("new_branches", std::int64_t{0}),
                        h.value("timestamp_ms", std::int64_t{0})});
      }
      ledger->restore(std::move(per_api), std::move(global), std::move(hist));
    }
    if (history != nullptr) {
      for (const auto &entry : doc.value("executed_sequences", json::array())) {
        TaggedSequence seq;
        for (const auto &tok : entry.value("tokens", json::array())) {
          seq.push_back({tok.at("name").get<std::string>(),
                         dimension_from_name(tok.at("tag").get<std::string>())});
        }
        history->add(entry.at("driver_id").get<std::string>(), std::move(seq));
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("coverage artifact shape error: " + std::string(e.what()));
  }
}

// ---------------------------------------------------------------------
// crashes/<key>/triage.json

std::string serialize_triage(const CrashRecord &record) {
  json doc;
  doc["schema"] = "masfuzz.triage/1";
  doc["driver_id"] = record.driver_id;
  doc["dedup_key"] = record.dedup_key;
  doc["sanitizer_kind"] = std::string(sanitizer_kind_name(record.sanitizer_kind));
  doc["classification"] = std::string(classification_name(record.classification));
  doc["rationale"] = record.rationale;
  doc["needs_review"] = record.needs_review;
  doc["repair_driver_id"] = record.repair_driver_id;
  doc["alternate_inputs"] = record.alternate_inputs.size();
  json stack = json::array();
  for (const auto &f : record.stack) {
    stack.push_back({{"symbol", f.symbol}, {"file", f.file}, {"line", f.line}});
  }
  doc["stack"] = std::move(stack);
  return dump(doc);
}

CrashRecord deserialize_triage(const std::string &text) {
  json doc = parse_with_schema(text, "masfuzz.triage/1");
  CrashRecord record;
  try {
    record.driver_id = doc.at("driver_id").get<std::string>();
    record.dedup_key = doc.at("dedup_key").get<std::string>();
    record.sanitizer_kind =
        sanitizer_kind_from_name(doc.at("sanitizer_kind").get<std::string>());
    record.classification =
        classification_from_name(doc.at("classification").get<std::string>());
    record.rationale = doc.value("rationale", "");
    record.needs_review = doc.value("needs_review", false);
    record.repair_driver_id = doc.value("repair_driver_id", "");
    for (const auto &f : doc.value("stack", json::array())) {
      record.stack.push_back(
          {f.value("symbol", ""), f.value("file", ""), f.value("line", 0)});
    }
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("triage artifact shape error: " + std::string(e.what()));
  }
  return record;
}

}  // namespace masfuzz
