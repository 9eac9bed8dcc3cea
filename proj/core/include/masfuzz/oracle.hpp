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

#ifndef MASFUZZ_ORACLE_HPP_
#define MASFUZZ_ORACLE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "masfuzz/model.hpp"

namespace masfuzz {

/// Raw chat-completion transport (OpenAI-compatible request/response
/// shape). Role-specific oracles build prompts on top of this.
class ChatOracle {
 public:
  virtual ~ChatOracle() = default;
  /// Returns the assistant message text. Throws OracleError on
  /// transport failure or an empty reply.
  virtual std::string complete(const std::string &system_prompt,
                               const std::string &user_prompt) = 0;
};

struct HttpOracleConfig {
  std::string base_url;  // e.g. "http://127.0.0.1:8080"
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key;  // empty sends no Authorization header
  double temperature = 0.0;
  int timeout_seconds = 120;
};

class HttpChatOracle : public ChatOracle {
 public:
  explicit HttpChatOracle(HttpOracleConfig config);
  std::string complete(const std::string &system_prompt, const std::string &user_prompt) override;

 private:
  HttpOracleConfig config_;
};

/// Produces structured per-API semantics and cross-API ordering
/// relations. Implementations: the chat backend and the deterministic
/// stub used for offline runs and tests.
class SemanticOracle {
 public:
  virtual ~SemanticOracle() = default;
  virtual SemanticDescription describe(const ApiMetainfo &api) = 0;
  virtual std::vector<SemanticRelation> relate(
      const std::vector<SemanticDescription> &descs) = 0;
};

/// Deterministic template oracle: description fields are derived from
/// the doc comment and signature; relations are read from "call
/// before/after <api>" phrases in the documentation.
class StubSemanticOracle : public SemanticOracle {
 public:
  SemanticDescription describe(const ApiMetainfo &api) override;
  std::vector<SemanticRelation> relate(const std::vector<SemanticDescription> &descs) override;
};

/// Prompts a chat backend and parses its JSON replies; one retry per
/// call on a malformed reply, then OracleError.
class ChatSemanticOracle : public SemanticOracle {
 public:
  explicit ChatSemanticOracle(std::shared_ptr<ChatOracle> chat) : chat_(std::move(chat)) {}
  SemanticDescription describe(const ApiMetainfo &api) override;
  std::vector<SemanticRelation> relate(const std::vector<SemanticDescription> &descs) override;

 private:
  std::shared_ptr<ChatOracle> chat_;
};

/// Everything a crash classification decision may consult.
struct CrashContext {
  std::string driver_source;
  std::string stack_text;
  std::string sanitizer_kind;
  std::string faulting_api;  // innermost in-library frame, empty when none
  std::string faulting_api_doc;
  bool fault_in_driver = false;  // innermost resolved frame is driver code
};

struct CrashVerdict {
  enum class Kind { kApiMisuse, kLibraryBug };
  Kind kind = Kind::kLibraryBug;
  std::string rationale;
};

class AnalysisOracle {
 public:
  virtual ~AnalysisOracle() = default;
  /// Throws OracleError when no verdict could be obtained.
  virtual CrashVerdict classify(const CrashContext &ctx) = 0;
};

/// Deterministic rule: misuse iff the fault is in driver code or the
/// faulting API's documentation states a precondition keyword matched
/// against the crash kind; otherwise a library bug.
class StubAnalysisOracle : public AnalysisOracle {
 public:
  CrashVerdict classify(const CrashContext &ctx) override;
};

class ChatAnalysisOracle : public AnalysisOracle {
 public:
  explicit ChatAnalysisOracle(std::shared_ptr<ChatOracle> chat) : chat_(std::move(chat)) {}
  CrashVerdict classify(const CrashContext &ctx) override;

 private:
  std::shared_ptr<ChatOracle> chat_;
};

}  // namespace masfuzz

#endif  // MASFUZZ_ORACLE_HPP_
