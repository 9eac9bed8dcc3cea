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

#include "masfuzz/campaign.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "masfuzz/compat.hpp"
#include "masfuzz/error.hpp"
#include "masfuzz/json_io.hpp"
#include "masfuzz/mutation.hpp"
#include "masfuzz/rng.hpp"
#include "masfuzz/semantics.hpp"

namespace masfuzz {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------
// Config

std::int64_t parse_duration_ms(const std::string &text) {
  if (text.empty()) throw FormatError("empty duration");
  std::int64_t multiplier = 1000;  // bare numbers are seconds
  std::string digits = text;
  switch (text.back()) {
    case 's':
      digits.pop_back();
      break;
    case 'm':
      multiplier = 60 * 1000;
      digits.pop_back();
      break;
    case 'h':
      multiplier = 60 * 60 * 1000;
      digits.pop_back();
      break;
    default:
      break;
  }
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c) != 0; })) {
    throw FormatError("bad duration '" + text + "', expected forms: 90, 90s, 15m, 2h");
  }
  return std::atoll(digits.c_str()) * multiplier;
}

CampaignConfig parse_campaign_config(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("config is not valid JSON: " + std::string(e.what()));
  }
  if (doc.value("schema", "") != "masfuzz.config/1") {
    throw FormatError("config schema mismatch, expected masfuzz.config/1");
  }
  CampaignConfig cfg;
  try {
    cfg.library_root = doc.at("library_root").get<std::string>();
    cfg.workdir = doc.at("workdir").get<std::string>();
    cfg.rng_seed = doc.value("rng_seed", std::uint64_t{1});
    cfg.rounds = doc.value("rounds", 1);
    if (doc.contains("scan")) {
      const auto &s = doc["scan"];
      if (s.contains("public_header_globs")) {
        cfg.scan.public_header_globs = s["public_header_globs"].get<std::vector<std::string>>();
      }
      if (s.contains("usage_dir_globs")) {
        cfg.scan.usage_dir_globs = s["usage_dir_globs"].get<std::vector<std::string>>();
      }
      if (s.contains("exclusion_globs")) {
        cfg.scan.exclusion_globs = s["exclusion_globs"].get<std::vector<std::string>>();
      }
    }
    if (doc.contains("miner")) {
      const auto &m = doc["miner"];
      cfg.miner.max_len = m.value("max_len", cfg.miner.max_len);
      cfg.miner.mp_sample_size = m.value("mp_sample_size", cfg.miner.mp_sample_size);
      cfg.miner.sem_batch_size = m.value("sem_batch_size", cfg.miner.sem_batch_size);
    }
    cfg.miner.rng_seed = cfg.rng_seed;
    if (doc.contains("weights")) {
      const auto &w = doc["weights"];
      cfg.weights.ue = w.value("ue", 1.0);
      cfg.weights.mp = w.value("mp", 1.0);
      cfg.weights.sem = w.value("sem", 1.0);
    }
    if (doc.contains("scheduler")) {
      const auto &s = doc["scheduler"];
      cfg.scheduler.theta = s.value("theta", cfg.scheduler.theta);
      cfg.scheduler.beta = s.value("beta", cfg.scheduler.beta);
      cfg.scheduler.base = s.value("base", cfg.scheduler.base);
      cfg.scheduler.alpha_min = s.value("alpha_min", cfg.scheduler.alpha_min);
      cfg.scheduler.alpha_max = s.value("alpha_max", cfg.scheduler.alpha_max);
      cfg.scheduler.quantum_ms = s.value("quantum_ms", cfg.scheduler.quantum_ms);
      if (s.contains("budget")) {
        cfg.scheduler.total_budget_ms = parse_duration_ms(s["budget"].get<std::string>());
      }
    }
    if (doc.contains("oracles")) {
      const auto &o = doc["oracles"];
      cfg.oracles.mode = o.value("mode", cfg.oracles.mode);
      cfg.oracles.api_key_env = o.value("api_key_env", cfg.oracles.api_key_env);
      if (o.contains("http")) {
        const auto &h = o["http"];
        cfg.oracles.http.base_url = h.value("base_url", "");
        cfg.oracles.http.path = h.value("path", cfg.oracles.http.path);
        cfg.oracles.http.model = h.value("model", "");
        cfg.oracles.http.temperature = h.value("temperature", 0.0);
        cfg.oracles.http.timeout_seconds = h.value("timeout_seconds", 120);
      }
    }
    if (doc.contains("executor")) {
      const auto &e = doc["executor"];
      cfg.executor.mode = e.value("mode", cfg.executor.mode);
      cfg.executor.simspec_path = e.value("simspec", "");
      cfg.executor.grace_quantum_ms = e.value("grace_quantum_ms", cfg.executor.grace_quantum_ms);
      cfg.executor.per_input_timeout_s =
          e.value("per_input_timeout_s", cfg.executor.per_input_timeout_s);
    }
    if (doc.contains("toolchain")) {
      const auto &t = doc["toolchain"];
      cfg.toolchain.clang = t.value("clang", cfg.toolchain.clang);
      cfg.toolchain.addr2line = t.value("addr2line", cfg.toolchain.addr2line);
      if (t.contains("extra_cflags")) {
        cfg.toolchain.extra_cflags = t["extra_cflags"].get<std::vector<std::string>>();
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("config shape error: " + std::string(e.what()));
  }
  return cfg;
}

void validate_campaign_config(const CampaignConfig &cfg) {
  if (cfg.library_root.empty() || !fs::exists(cfg.library_root)) {
    throw PreconditionError("library_root does not exist: " + cfg.library_root);
  }
  if (cfg.workdir.empty()) throw PreconditionError("workdir must be set");
  if (cfg.rounds < 1) throw PreconditionError("rounds must be >= 1");
  cfg.scheduler.validate();
  if (cfg.oracles.mode != "stub" && cfg.oracles.mode != "http") {
    throw PreconditionError("oracles.mode must be stub or http");
  }
  if (cfg.oracles.mode == "http" && cfg.oracles.http.base_url.empty()) {
    throw PreconditionError("oracles.http.base_url required in http mode");
  }
  if (cfg.executor.mode != "libfuzzer" && cfg.executor.mode != "simulate") {
    throw PreconditionError("executor.mode must be libfuzzer or simulate");
  }
  if (cfg.executor.mode == "simulate" &&
      (cfg.executor.simspec_path.empty() || !fs::exists(cfg.executor.simspec_path))) {
    throw PreconditionError("executor.simspec must name an existing file in simulate mode");
  }
}

// ---------------------------------------------------------------------
// Report serialization

namespace {

json record_to_json(const DriverRunRecord &r) {
  return json{{"driver_id", r.decision.driver_id},
              {"action", r.decision.action == ScheduleAction::kSkip ? "skip" : "execute"},
              {"avg_cov", r.decision.avg_cov},
              {"alpha_t", r.decision.alpha_t},
              {"base_time_ms", r.decision.base_time_ms},
              {"omega_novelty", r.decision.omega_novelty},
              {"assigned_ms", r.decision.assigned_ms},
              {"t_actual_ms", r.t_actual_ms},
              {"new_branches", r.new_branches},
              {"executions", r.executions},
              {"mutated", r.mutated},
              {"retired", r.retired},
              {"child_id", r.child_id},
              {"child_new_branches", r.child_new_branches}};
}

DriverRunRecord record_from_json(const json &j) {
  DriverRunRecord r;
  r.decision.driver_id = j.value("driver_id", "");
  r.decision.action =
      j.value("action", "skip") == "execute" ? ScheduleAction::kExecute : ScheduleAction::kSkip;
  r.decision.avg_cov = j.value("avg_cov", 0.0);
  r.decision.alpha_t = j.value("alpha_t", 0.0);
  r.decision.base_time_ms = j.value("base_time_ms", std::int64_t{0});
  r.decision.omega_novelty = j.value("omega_novelty", 0.0);
  r.decision.assigned_ms = j.value("assigned_ms", std::int64_t{0});
  r.t_actual_ms = j.value("t_actual_ms", std::int64_t{0});
  r.new_branches = j.value("new_branches", std::int64_t{0});
  r.executions = j.value("executions", std::int64_t{0});
  r.mutated = j.value("mutated", false);
  r.retired = j.value("retired", false);
  r.child_id = j.value("child_id", "");
  r.child_new_branches = j.value("child_new_branches", std::int64_t{0});
  return r;
}

json mutation_to_json(const MutationLogEntry &m) {
  return json{{"parent_id", m.parent_id},
              {"child_id", m.child_id},
              {"pivot_api", m.pivot_api},
              {"injected_sequence", m.injected_sequence},
              {"strategy", m.strategy}};
}

MutationLogEntry mutation_from_json(const json &j) {
  return {j.value("parent_id", ""), j.value("child_id", ""), j.value("pivot_api", ""),
          j.value("injected_sequence", ""), j.value("strategy", "")};
}

std::string hex_encode(const std::string &bytes) {
  static const char *kHex = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out += kHex[c >> 4];
    out += kHex[c & 0xF];
  }
  return out;
}

std::string hex_decode_bytes(const std::string &hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return 0;
  };
  std::string out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2) {
    out.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return out;
}

std::uint64_t fnv1a_bytes(const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex8_of(std::uint64_t v) {
  static const char *kHex = "0123456789abcdef";
  std::string out;
  for (int i = 7; i >= 0; --i) out += kHex[(v >> (i * 4)) & 0xF];
  return out;
}

}  // namespace

std::string serialize_report(const CampaignReport &report) {
  json doc;
  doc["schema"] = "masfuzz.report/1";
  doc["status"] = report.status;
  json timings = json::array();
  for (const auto &t : report.stage_timings) {
    timings.push_back({{"stage", t.stage}, {"elapsed_ms", t.elapsed_ms}});
  }
  doc["stage_timings"] = std::move(timings);
  doc["sequence_counts"] = report.sequence_counts;
  doc["drivers_generated"] = report.drivers_generated;
  doc["drivers_compiled"] = report.drivers_compiled;
  doc["drivers_retired"] = report.drivers_retired;
  json records = json::array();
  for (const auto &r : report.schedule_records) records.push_back(record_to_json(r));
  doc["schedule_records"] = std::move(records);
  json mutations = json::array();
  for (const auto &m : report.mutations) mutations.push_back(mutation_to_json(m));
  doc["mutations"] = std::move(mutations);
  json curve = json::array();
  for (const auto &s : report.coverage_curve) {
    curve.push_back({{"at_ms", s.at_ms}, {"global_branches", s.global_branches}});
  }
  doc["coverage_curve"] = std::move(curve);
  doc["consumed_ms"] = report.consumed_ms;
  doc["global_branches"] = report.global_branches;
  doc["unique_crashes"] = report.unique_crashes;
  doc["api_misuse"] = report.api_misuse;
  doc["library_bugs"] = report.library_bugs;
  doc["unclassified"] = report.unclassified;
  doc["crash_keys"] = report.crash_keys;
  return doc.dump(2) + "\n";
}

CampaignReport deserialize_report(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("report is not valid JSON: " + std::string(e.what()));
  }
  if (doc.value("schema", "") != "masfuzz.report/1") {
    throw FormatError("report schema mismatch, expected masfuzz.report/1");
  }
  CampaignReport report;
  report.status = doc.value("status", "completed");
  for (const auto &t : doc.value("stage_timings", json::array())) {
    report.stage_timings.push_back(
        {t.value("stage", ""), t.value("elapsed_ms", std::int64_t{0})});
  }
  if (doc.contains("sequence_counts")) {
    for (const auto &[k, v] : doc["sequence_counts"].items()) {
      report.sequence_counts[k] = v.get<int>();
    }
  }
  report.drivers_generated = doc.value("drivers_generated", 0);
  report.drivers_compiled = doc.value("drivers_compiled", 0);
  report.drivers_retired = doc.value("drivers_retired", 0);
  for (const auto &r : doc.value("schedule_records", json::array())) {
    report.schedule_records.push_back(record_from_json(r));
  }
  for (const auto &m : doc.value("mutations", json::array())) {
    report.mutations.push_back(mutation_from_json(m));
  }
  for (const auto &s : doc.value("coverage_curve", json::array())) {
    report.coverage_curve.push_back({s.value("at_ms", std::int64_t{0}),
                                     s.value("global_branches", std::int64_t{0})});
  }
  report.consumed_ms = doc.value("consumed_ms", std::int64_t{0});
  report.global_branches = doc.value("global_branches", std::int64_t{0});
  report.unique_crashes = doc.value("unique_crashes", 0);
  report.api_misuse = doc.value("api_misuse", 0);
  report.library_bugs = doc.value("library_bugs", 0);
  report.unclassified = doc.value("unclassified", 0);
  report.crash_keys = doc.value("crash_keys", std::vector<std::string>{});
  return report;
}

std::string render_report_text(const CampaignReport &report) {
  std::ostringstream os;
  os << "campaign status: " << report.status << "\n";
  os << "budget consumed: " << report.consumed_ms / 1000.0 << "s\n";
  os << "sequences mined:";
  for (const auto &[dim, count] : report.sequence_counts) os << " " << dim << "=" << count;
  os << "\n";
  os << "drivers: generated=" << report.drivers_generated
     << " compiled=" << report.drivers_compiled << " retired=" << report.drivers_retired << "\n";
  os << "global branches covered: " << report.global_branches << "\n";
  os << "crashes: unique=" << report.unique_crashes << " api_misuse=" << report.api_misuse
     << " library_bugs=" << report.library_bugs << " unclassified=" << report.unclassified
     << "\n";
  if (!report.schedule_records.empty()) {
    os << "\nschedule decisions:\n";
    for (const auto &r : report.schedule_records) {
      char line[256];
      std::snprintf(line, sizeof line,
                    "  %-24s %-7s avgCov=%.4f alpha=%.4f omega=%.4f assigned=%lldms "
                    "actual=%lldms new=%lld\n",
                    r.decision.driver_id.c_str(),
                    r.decision.action == ScheduleAction::kSkip ? "skip" : "execute",
                    r.decision.avg_cov, r.decision.alpha_t, r.decision.omega_novelty,
                    static_cast<long long>(r.decision.assigned_ms),
                    static_cast<long long>(r.t_actual_ms),
                    static_cast<long long>(r.new_branches + r.child_new_branches));
      os << line;
      if (r.mutated) {
        os << "    mutated -> " << (r.child_id.empty() ? "(child not viable)" : r.child_id)
           << "\n";
      }
    }
  }
  if (!report.crash_keys.empty()) {
    os << "\ncrash records:\n";
    for (const auto &key : report.crash_keys) os << "  " << key << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------
// Campaign stages

struct Campaign::ScheduleState {
  std::int64_t remaining_ms = 0;
  std::int64_t consumed_ms = 0;
  bool budget_exhausted = false;
  bool complete = false;
  std::vector<DriverRunRecord> records;
  std::vector<CoverageSample> curve;
  std::vector<CrashEvent> crashes;
  std::vector<MutationLogEntry> mutations;
};

namespace {

/// Simulate mode has no real toolchain; drivers are accepted as-is.
class MarkingCompiler : public DriverCompiler {
 public:
  CompileResult compile(const FuzzDriver &driver, const std::string &source_path,
                        const std::string &binary_path) override {
    (void)driver;
    (void)source_path;
    return {true, "", binary_path};
  }
};

/// Persists campaign state before each slot so an aborted run resumes
/// from the last completed iteration.
class CheckpointingExecutor : public DriverExecutor {
 public:
  CheckpointingExecutor(DriverExecutor &inner, std::function<void()> checkpoint)
      : inner_(inner), checkpoint_(std::move(checkpoint)) {}
  ExecutionResult execute(const FuzzDriver &driver, std::int64_t budget_ms) override {
    checkpoint_();
    return inner_.execute(driver, budget_ms);
  }

 private:
  DriverExecutor &inner_;
  std::function<void()> checkpoint_;
};

std::string driver_stem(const FuzzDriver &driver) {
  std::string name = driver.filename();
  return name.substr(0, name.size() - 2);
}

std::vector<std::string> include_dirs_for(const LibraryModel &model) {
  std::vector<std::string> dirs;
  auto push = [&](const fs::path &p) {
    std::string s = p.string();
    if (!s.empty() && std::find(dirs.begin(), dirs.end(), s) == dirs.end()) dirs.push_back(s);
  };
  push(model.root);
  for (const auto &h : model.headers) push((fs::path(model.root) / h).parent_path());
  return dirs;
}

}  // namespace

Campaign::Campaign(CampaignConfig config) : cfg_(std::move(config)) {}

std::string Campaign::path(const std::string &rel) const {
  return (fs::path(cfg_.workdir) / rel).string();
}

void Campaign::require_artifact(const std::string &rel, const std::string &stage) const {
  if (!fs::exists(path(rel))) throw StageDependencyError(rel, stage);
}

void Campaign::load_mined() {
  if (mined_loaded_) return;
  require_artifact("model.json", "mine");
  require_artifact("sequences.json", "mine");
  model_ = deserialize_model(read_text_file(path("model.json")));
  deserialize_sequences(read_text_file(path("sequences.json")), &pool_, &descriptions_,
                        &relations_);
  mined_loaded_ = true;
}

void Campaign::load_drivers() {
  if (drivers_loaded_) return;
  require_artifact("drivers/index.json", "generate");
  drivers_.clear();
  for (auto &driver : deserialize_drivers(read_text_file(path("drivers/index.json")))) {
    std::string src = path("drivers/" + driver.filename());
    if (fs::exists(src)) driver.source = read_text_file(src);
    drivers_.push_back(std::move(driver));
  }
  drivers_loaded_ = true;
}

void Campaign::save_drivers() {
  std::vector<FuzzDriver> list(drivers_.begin(), drivers_.end());
  write_text_file(path("drivers/index.json"), serialize_drivers(list));
}

void Campaign::write_driver_source(const FuzzDriver &driver) {
  write_text_file(path("drivers/" + driver.filename()), driver.source);
}

std::unique_ptr<GenerationOracle> Campaign::make_generation_oracle() {
  if (cfg_.oracles.mode == "http") {
    HttpOracleConfig http = cfg_.oracles.http;
    if (const char *key = std::getenv(cfg_.oracles.api_key_env.c_str())) http.api_key = key;
    auto chat = std::make_shared<HttpChatOracle>(http);
    return std::make_unique<ChatGenerationOracle>(chat, model_);
  }
  return std::make_unique<StubGenerationOracle>(model_);
}

std::unique_ptr<SemanticOracle> Campaign::make_semantic_oracle() {
  if (cfg_.oracles.mode == "http") {
    HttpOracleConfig http = cfg_.oracles.http;
    if (const char *key = std::getenv(cfg_.oracles.api_key_env.c_str())) http.api_key = key;
    auto chat = std::make_shared<HttpChatOracle>(http);
    return std::make_unique<ChatSemanticOracle>(chat);
  }
  return std::make_unique<StubSemanticOracle>();
}

std::unique_ptr<AnalysisOracle> Campaign::make_analysis_oracle() {
  if (cfg_.oracles.mode == "http") {
    HttpOracleConfig http = cfg_.oracles.http;
    if (const char *key = std::getenv(cfg_.oracles.api_key_env.c_str())) http.api_key = key;
    auto chat = std::make_shared<HttpChatOracle>(http);
    return std::make_unique<ChatAnalysisOracle>(chat);
  }
  return std::make_unique<StubAnalysisOracle>();
}

std::unique_ptr<DriverCompiler> Campaign::make_compiler() {
  if (cfg_.executor.mode == "simulate") return std::make_unique<MarkingCompiler>();
  if (library_objects_.empty()) {
    library_objects_ = build_instrumented_library(model_, path("build"), cfg_.toolchain);
    std::tie(replay_objects_, replay_runner_) =
        build_replay_library(model_, path("build/replay"), cfg_.toolchain);
  }
  return std::make_unique<ClangCompiler>(cfg_.toolchain, include_dirs_for(model_),
                                         library_objects_, replay_objects_, replay_runner_);
}

std::unique_ptr<DriverExecutor> Campaign::make_executor() {
  if (cfg_.executor.mode == "simulate") {
    return std::make_unique<SimulatedExecutor>(
        parse_simspec(read_text_file(cfg_.executor.simspec_path)));
  }
  LibFuzzerConfig lf;
  lf.binary_dir = path("drivers");
  lf.corpus_root = path("corpus");
  lf.artifact_dir = path("crashes/raw");
  lf.toolchain = cfg_.toolchain;
  lf.grace_quantum_ms = cfg_.executor.grace_quantum_ms;
  lf.per_input_timeout_s = cfg_.executor.per_input_timeout_s;
  return std::make_unique<LibFuzzerExecutor>(lf);
}

void Campaign::mine() {
  model_ = scan_library(cfg_.library_root, cfg_.scan);
  write_text_file(path("model.json"), serialize_model(model_));

  MinerConfig miner = cfg_.miner;
  miner.rng_seed = cfg_.rng_seed;

  std::vector<ApiSequence> sequences = mine_usage_sequences(model_);
  CompatibilityGraph graph = build_compat_graph(model_);
  for (auto &seq : mine_mp_sequences(graph, miner)) sequences.push_back(std::move(seq));

  // Semantic mining mirrors mine_sem_sequences but keeps descriptions
  // and relations for the artifact.
  auto sem_oracle = make_semantic_oracle();
  descriptions_.clear();
  for (const auto &api : model_.apis) {
    descriptions_.push_back(extract_semantics(api, *sem_oracle));
  }
  relations_.clear();
  for (std::size_t start = 0; start < descriptions_.size();
       start += static_cast<std::size_t>(miner.sem_batch_size)) {
    std::size_t end = std::min(descriptions_.size(),
                               start + static_cast<std::size_t>(miner.sem_batch_size));
    std::vector<SemanticDescription> batch(descriptions_.begin() + start,
                                           descriptions_.begin() + end);
    for (auto &r : infer_relations(batch, *sem_oracle)) relations_.push_back(std::move(r));
  }
  for (auto &seq : synthesize_sem_sequences(relations_, miner)) sequences.push_back(std::move(seq));

  assign_sequence_ids(sequences);
  pool_.sequences = std::move(sequences);
  write_text_file(path("sequences.json"), serialize_sequences(pool_, descriptions_, relations_));
  mined_loaded_ = true;
}

void Campaign::compile_with_repairs(FuzzDriver &driver, DriverCompiler &compiler,
                                    GenerationOracle &oracle) {
  std::string src = path("drivers/" + driver.filename());
  std::string bin = path("drivers/" + driver_stem(driver));
  CompileResult result = compiler.compile(driver, src, bin);
  if (result.ok) {
    advance_driver(driver, DriverState::kCompiled);
    return;
  }
  advance_driver(driver, DriverState::kCompileFailed);
  while (driver.repair_attempts < kMaxRepairAttempts) {
    driver = repair_driver(driver, result.diagnostics, oracle);
    write_driver_source(driver);
    result = compiler.compile(driver, src, bin);
    if (result.ok) {
      advance_driver(driver, DriverState::kCompiled);
      return;
    }
    advance_driver(driver, DriverState::kCompileFailed);
  }
  advance_driver(driver, DriverState::kRetired);
}

void Campaign::write_corpus(const FuzzDriver &driver, GenerationOracle &oracle) {
  SeedCorpus corpus = build_seed_corpus(driver, model_, oracle);
  for (const auto &seed : corpus.seeds) {
    std::string name = "seed-" + hex8_of(fnv1a_bytes(seed.bytes));
    write_text_file(path("corpus/" + driver.id + "/" + name), seed.bytes);
  }
}

void Campaign::generate() {
  load_mined();
  auto oracle = make_generation_oracle();
  auto compiler = make_compiler();

  drivers_.clear();
  int counter = 0;
  for (int round = 0; round < cfg_.rounds; ++round) {
    for (const std::string &target : target_order(model_, pool_)) {
      char id[32];
      std::snprintf(id, sizeof id, "d-%04d", counter++);
      PromptBundle bundle = select_sequences(target, pool_, model_);
      FuzzDriver driver = generate_driver(bundle, *oracle, id);
      write_driver_source(driver);
      compile_with_repairs(driver, *compiler, *oracle);
      if (driver.state == DriverState::kCompiled) write_corpus(driver, *oracle);
      drivers_.push_back(std::move(driver));
    }
  }
  // Selection consumed sequences; persist the used flags.
  write_text_file(path("sequences.json"), serialize_sequences(pool_, descriptions_, relations_));
  save_drivers();
  drivers_loaded_ = true;
}

void Campaign::save_schedule_state(const ScheduleState &state) {
  json doc;
  doc["schema"] = "masfuzz.schedule/1";
  doc["remaining_ms"] = state.remaining_ms;
  doc["consumed_ms"] = state.consumed_ms;
  doc["budget_exhausted"] = state.budget_exhausted;
  doc["complete"] = state.complete;
  json records = json::array();
  for (const auto &r : state.records) records.push_back(record_to_json(r));
  doc["records"] = std::move(records);
  json curve = json::array();
  for (const auto &s : state.curve) {
    curve.push_back({{"at_ms", s.at_ms}, {"global_branches", s.global_branches}});
  }
  doc["curve"] = std::move(curve);
  json crashes = json::array();
  for (const auto &c : state.crashes) {
    crashes.push_back({{"driver_id", c.driver_id},
                       {"kind", c.crash.kind},
                       {"report", c.crash.report_text},
                       {"input_hex", hex_encode(c.crash.input)}});
  }
  doc["crash_events"] = std::move(crashes);
  json mutations = json::array();
  for (const auto &m : state.mutations) mutations.push_back(mutation_to_json(m));
  doc["mutations"] = std::move(mutations);
  write_text_file(path("coverage/schedule.json"), doc.dump(2) + "\n");
}

std::optional<Campaign::ScheduleState> Campaign::load_schedule_state() {
  std::string file = path("coverage/schedule.json");
  if (!fs::exists(file)) return std::nullopt;
  json doc;
  try {
    doc = json::parse(read_text_file(file));
  } catch (const nlohmann::json::exception &e) {
    throw FormatError("schedule state is not valid JSON: " + std::string(e.what()));
  }
  if (doc.value("schema", "") != "masfuzz.schedule/1") {
    throw FormatError("schedule state schema mismatch");
  }
  ScheduleState state;
  state.remaining_ms = doc.value("remaining_ms", std::int64_t{0});
  state.consumed_ms = doc.value("consumed_ms", std::int64_t{0});
  state.budget_exhausted = doc.value("budget_exhausted", false);
  state.complete = doc.value("complete", false);
  for (const auto &r : doc.value("records", json::array())) {
    state.records.push_back(record_from_json(r));
  }
  for (const auto &s : doc.value("curve", json::array())) {
    state.curve.push_back(
        {s.value("at_ms", std::int64_t{0}), s.value("global_branches", std::int64_t{0})});
  }
  for (const auto &c : doc.value("crash_events", json::array())) {
    CrashEvent ev;
    ev.driver_id = c.value("driver_id", "");
    ev.crash.kind = c.value("kind", "other");
    ev.crash.report_text = c.value("report", "");
    ev.crash.input = hex_decode_bytes(c.value("input_hex", ""));
    state.crashes.push_back(std::move(ev));
  }
  for (const auto &m : doc.value("mutations", json::array())) {
    state.mutations.push_back(mutation_from_json(m));
  }
  return state;
}

void Campaign::schedule() {
  load_mined();
  load_drivers();

  ScheduleState state;
  if (auto persisted = load_schedule_state()) {
    state = std::move(*persisted);
    if (state.complete) return;
  } else {
    cfg_.scheduler.validate();
    state.remaining_ms = cfg_.scheduler.total_budget_ms;
  }
  // A resumed campaign can arrive with nothing left to spend.
  if (state.remaining_ms <= 0) {
    state.complete = true;
    state.budget_exhausted = true;
    save_schedule_state(state);
    return;
  }

  CoverageLedger ledger;
  SequenceHistory history;
  if (fs::exists(path("coverage/ledger.json"))) {
    deserialize_coverage(read_text_file(path("coverage/ledger.json")), &ledger, &history);
  } else {
    ledger = CoverageLedger::init(model_);
  }

  auto gen_oracle = make_generation_oracle();
  auto compiler = make_compiler();
  auto executor = make_executor();
  CompatibilityGraph compat = build_compat_graph(model_);

  std::vector<FuzzDriver *> eligible;
  for (auto &driver : drivers_) {
    if (driver.state == DriverState::kCompiled) eligible.push_back(&driver);
  }

  auto checkpoint = [&] {
    save_drivers();
    write_text_file(path("coverage/ledger.json"), serialize_coverage(ledger, history));
  };
  CheckpointingExecutor checkpointed(*executor, checkpoint);

  MutateFn mutate = [&](FuzzDriver &parent) -> MutationRequestResult {
    std::vector<std::vector<std::string>> executed;
    for (const auto &entry : history.entries()) {
      std::vector<std::string> names;
      for (const auto &tok : entry.seq) names.push_back(tok.name);
      executed.push_back(std::move(names));
    }
    auto energies = compute_energy(model_, ledger, pool_, executed);
    Rng rng = Rng::derive(cfg_.rng_seed, "mutate:" + parent.id);
    auto plan = plan_mutation(parent, energies, pool_, model_, compat, relations_, rng);
    if (!plan) return {false, nullptr};

    drivers_.push_back(apply_mutation(parent, *plan, *gen_oracle, model_, pool_));
    FuzzDriver &child = drivers_.back();
    state.mutations.push_back({parent.id, child.id, plan->pivot_api, plan->injected_sequence,
                               mutation_strategy_name(plan->strategy)});
    write_driver_source(child);
    if (child.state != DriverState::kGenerated) return {true, nullptr};
    compile_with_repairs(child, *compiler, *gen_oracle);
    if (child.state != DriverState::kCompiled) return {true, nullptr};
    write_corpus(child, *gen_oracle);
    return {true, &child};
  };

  SchedulerConfig run_cfg = cfg_.scheduler;
  run_cfg.total_budget_ms = state.remaining_ms;
  std::int64_t prior_consumed = state.consumed_ms;

  ScheduleOutcome outcome = run_campaign(eligible, checkpointed, ledger, history, model_, pool_,
                                         cfg_.weights, run_cfg, mutate);

  for (auto &record : outcome.records) state.records.push_back(std::move(record));
  for (const auto &sample : outcome.curve) {
    state.curve.push_back({sample.at_ms + prior_consumed, sample.global_branches});
  }
  for (auto &crash : outcome.crashes) state.crashes.push_back(std::move(crash));
  state.consumed_ms += outcome.consumed_ms;
  state.remaining_ms -= outcome.consumed_ms;
  state.budget_exhausted = outcome.budget_exhausted;
  state.complete = true;

  save_drivers();
  write_text_file(path("coverage/ledger.json"), serialize_coverage(ledger, history));
  // Mutation consumed sequences; keep the pool in sync for resume.
  write_text_file(path("sequences.json"), serialize_sequences(pool_, descriptions_, relations_));
  save_schedule_state(state);
}

std::string Campaign::schedule_dry_run() {
  cfg_.scheduler.validate();
  load_mined();
  load_drivers();

  CoverageLedger ledger;
  SequenceHistory history;
  if (fs::exists(path("coverage/ledger.json"))) {
    deserialize_coverage(read_text_file(path("coverage/ledger.json")), &ledger, &history);
  } else {
    ledger = CoverageLedger::init(model_);
  }

  std::vector<FuzzDriver *> eligible;
  for (auto &driver : drivers_) {
    if (driver.state == DriverState::kCompiled) eligible.push_back(&driver);
  }

  std::ostringstream os;
  os << "driver                    action  avgCov  alpha_t  omega   assigned_ms\n";
  SchedulerState st{&ledger,      &history,
                    &model_,      &pool_,
                    cfg_.weights, cfg_.scheduler.total_budget_ms,
                    eligible.size()};
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    ScheduleDecision d = assign_time(*eligible[i], i, st, cfg_.scheduler);
    char line[192];
    std::snprintf(line, sizeof line, "%-25s %-7s %.4f  %.4f   %.4f  %lld\n", d.driver_id.c_str(),
                  d.action == ScheduleAction::kSkip ? "skip" : "execute", d.avg_cov, d.alpha_t,
                  d.omega_novelty, static_cast<long long>(d.assigned_ms));
    os << line;
  }
  return os.str();
}

void Campaign::triage() {
  load_mined();
  load_drivers();
  require_artifact("coverage/schedule.json", "schedule");
  ScheduleState state = *load_schedule_state();

  auto analysis = make_analysis_oracle();
  auto gen_oracle = make_generation_oracle();
  auto compiler = make_compiler();

  std::vector<CrashRecord> records = dedup_crashes(state.crashes, model_);
  bool drivers_changed = false;
  for (CrashRecord &record : records) {
    std::string dir = "crashes/" + record.dedup_key;
    std::string triage_file = path(dir + "/triage.json");
    if (fs::exists(triage_file)) continue;  // already triaged; idempotent

    FuzzDriver *driver = nullptr;
    for (auto &d : drivers_) {
      if (d.id == record.driver_id) {
        driver = &d;
        break;
      }
    }
    if (driver != nullptr) {
      record = classify_crash(std::move(record), *driver, model_, *analysis);
    } else {
      record.needs_review = true;
      record.rationale = "crashing driver " + record.driver_id + " not found in the index";
    }

    // An api_misuse verdict earns the driver one corrected variant.
    if (record.classification == Classification::kApiMisuse && driver != nullptr &&
        record.repair_driver_id.empty()) {
      FuzzDriver fixed;
      fixed.id = driver->id + "-fix1";
      fixed.target_api = driver->target_api;
      fixed.sequences_used = driver->sequences_used;
      fixed.lineage = driver->id;
      try {
        fixed.source = gen_oracle->repair(
            driver->source, "crash report (api misuse):\n" + record.report_text);
        write_driver_source(fixed);
        std::string src = path("drivers/" + fixed.filename());
        std::string bin = path("drivers/" + driver_stem(fixed));
        CompileResult cr = compiler->compile(fixed, src, bin);
        advance_driver(fixed, cr.ok ? DriverState::kCompiled : DriverState::kCompileFailed);
        record.repair_driver_id = fixed.id;
        drivers_.push_back(std::move(fixed));
        drivers_changed = true;
      } catch (const OracleError &) {
        // The single repair attempt is spent either way.
        record.repair_driver_id = "";
      }
    }

    write_text_file(path(dir + "/input.bin"), record.input);
    write_text_file(path(dir + "/report.txt"), record.report_text);
    for (std::size_t i = 0; i < record.alternate_inputs.size(); ++i) {
      write_text_file(path(dir + "/input-alt" + std::to_string(i + 1) + ".bin"),
                      record.alternate_inputs[i]);
    }
    write_text_file(triage_file, serialize_triage(record));
  }
  if (drivers_changed) save_drivers();
}

CampaignReport Campaign::report() {
  require_artifact("model.json", "mine");
  load_mined();

  CampaignReport rep;
  for (const auto &seq : pool_.sequences) {
    rep.sequence_counts[std::string(dimension_name(seq.dimension))] += 1;
  }

  if (fs::exists(path("drivers/index.json"))) {
    load_drivers();
    for (const auto &driver : drivers_) {
      rep.drivers_generated += 1;
      if (driver.state == DriverState::kCompiled || driver.state == DriverState::kExecuted ||
          driver.state == DriverState::kMutated) {
        rep.drivers_compiled += 1;
      }
      if (driver.state == DriverState::kRetired) rep.drivers_retired += 1;
    }
  }

  rep.status = "in_progress";
  if (auto state = load_schedule_state()) {
    rep.schedule_records = state->records;
    rep.mutations = state->mutations;
    rep.coverage_curve = state->curve;
    rep.consumed_ms = state->consumed_ms;
    if (state->complete) {
      rep.status = state->budget_exhausted ? "budget_exhausted" : "completed";
    }
  }
  rep.stage_timings.push_back({"schedule", rep.consumed_ms});

  if (fs::exists(path("coverage/ledger.json"))) {
    CoverageLedger ledger;
    SequenceHistory history;
    deserialize_coverage(read_text_file(path("coverage/ledger.json")), &ledger, &history);
    rep.global_branches = static_cast<std::int64_t>(ledger.global_branches().size());
  }

  if (fs::exists(path("crashes"))) {
    std::vector<std::string> keys;
    for (const auto &entry : fs::directory_iterator(path("crashes"))) {
      if (!entry.is_directory() || entry.path().filename() == "raw") continue;
      std::string triage_file = (entry.path() / "triage.json").string();
      if (!fs::exists(triage_file)) continue;
      keys.push_back(entry.path().filename().string());
    }
    std::sort(keys.begin(), keys.end());
    for (const auto &key : keys) {
      CrashRecord record = deserialize_triage(read_text_file(path("crashes/" + key +
                                                                  "/triage.json")));
      rep.unique_crashes += 1;
      switch (record.classification) {
        case Classification::kApiMisuse:
          rep.api_misuse += 1;
          break;
        case Classification::kLibraryBug:
          rep.library_bugs += 1;
          break;
        case Classification::kUnclassified:
          rep.unclassified += 1;
          break;
      }
      rep.crash_keys.push_back(key);
    }
  }

  write_text_file(path("report.json"), serialize_report(rep));
  std::ostringstream curve;
  curve << "# t_ms\tglobal_branches\n";
  for (const auto &s : rep.coverage_curve) {
    curve << s.at_ms << "\t" << s.global_branches << "\n";
  }
  write_text_file(path("coverage/curve.tsv"), curve.str());
  return rep;
}

int Campaign::run() {
  validate_campaign_config(cfg_);
  fs::create_directories(cfg_.workdir);
  try {
    if (!fs::exists(path("model.json")) || !fs::exists(path("sequences.json"))) mine();
    if (!fs::exists(path("drivers/index.json"))) generate();
    schedule();
    triage();
    CampaignReport rep = report();
    return rep.status == "budget_exhausted" ? kExitBudgetExhausted : kExitCompleted;
  } catch (const StageDependencyError &) {
    throw;
  } catch (const std::exception &) {
    // Preserve the checkpoint and mark the report; the caller sees the
    // original error.
    try {
      CampaignReport rep;
      rep.status = "fatal";
      write_text_file(path("report.json"), serialize_report(rep));
    } catch (...) {
    }
    throw;
  }
}

}  // namespace masfuzz
