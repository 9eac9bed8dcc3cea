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

#ifndef MASFUZZ_SYNTHESIZER_HPP_
#define MASFUZZ_SYNTHESIZER_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "masfuzz/driver.hpp"
#include "masfuzz/model.hpp"
#include "masfuzz/oracle.hpp"

namespace masfuzz {

/// Input for one driver generation: the structural backbone (UE), the
/// coverage-extending variant (MP), the semantic complement (SEM), and
/// metainfo snippets for every API any of them mentions.
struct PromptBundle {
  std::string target_api;
  std::optional<ApiSequence> backbone;
  std::optional<ApiSequence> extension;
  std::optional<ApiSequence> complement;
  std::map<std::string, std::string> api_contexts;
};

/// Per category, picks the longest unused sequence containing `target`
/// (ties by lexicographic api list) and marks it used. When no category
/// has one, falls back to a singleton [target] sequence tagged SEM so
/// every public API stays reachable.
PromptBundle select_sequences(const std::string &target, SequencePool &pool,
                              const LibraryModel &model);

/// Produces and repairs driver source. Implementations: deterministic
/// template renderer (offline) and the chat backend.
class GenerationOracle {
 public:
  virtual ~GenerationOracle() = default;
  /// Returns complete C source for the bundle. Throws OracleError.
  virtual std::string generate(const PromptBundle &bundle) = 0;
  /// Returns corrected full source for failed diagnostics.
  virtual std::string repair(const std::string &source, const std::string &diagnostics) = 0;
  /// Optional extra seed blobs for a driver's input format.
  virtual std::vector<std::string> extra_seeds(const FuzzDriver &driver) {
    (void)driver;
    return {};
  }
};

/// Renders the merged call list into a fixed harness template: byte
/// cursor helpers, return values threaded into later compatible
/// parameters, primitives consumed from the fuzzer input.
class StubGenerationOracle : public GenerationOracle {
 public:
  explicit StubGenerationOracle(const LibraryModel &model) : model_(model) {}
  std::string generate(const PromptBundle &bundle) override;
  std::string repair(const std::string &source, const std::string &diagnostics) override;

 private:
  const LibraryModel &model_;
};

class ChatGenerationOracle : public GenerationOracle {
 public:
  ChatGenerationOracle(std::shared_ptr<ChatOracle> chat, const LibraryModel &model)
      : chat_(std::move(chat)), model_(model) {}
  std::string generate(const PromptBundle &bundle) override;
  std::string repair(const std::string &source, const std::string &diagnostics) override;

 private:
  std::shared_ptr<ChatOracle> chat_;
  const LibraryModel &model_;
};

/// The call order a bundle asks for: backbone order preserved, missing
/// extension calls threaded in, complement-only calls placed before or
/// after depending on their position relative to the shared part.
std::vector<std::string> merge_bundle_sequence(const PromptBundle &bundle);

/// Whether the name looks like a resource-releasing API. The driver
/// template and the mutation validator must agree on this set, because
/// the template appends such calls as an epilogue.
bool is_finalizer_name(const std::string &name);

/// Generates a driver for the bundle. The returned driver is
/// `generated` when the source passed validation (exactly one fuzzer
/// entry point, no main); after one regeneration attempt a still
/// invalid source leaves it `compile_failed`.
FuzzDriver generate_driver(const PromptBundle &bundle, GenerationOracle &oracle,
                           const std::string &driver_id);

/// One repair round: precondition state == compile_failed and fewer
/// than kMaxRepairAttempts attempts; returns the revised driver with
/// the attempt counted. Oracle failure also counts as an attempt.
FuzzDriver repair_driver(const FuzzDriver &driver, const std::string &diagnostics,
                         GenerationOracle &oracle);

struct Seed {
  std::string bytes;
  std::string origin;  // "doc:<api>", "default", "oracle"
};

struct SeedCorpus {
  std::string target_driver;
  std::vector<Seed> seeds;
};

/// Literal string samples from the doc comments of the driver's APIs,
/// deduplicated by content, plus a 4-byte default seed so the corpus is
/// never empty.
SeedCorpus build_seed_corpus(const FuzzDriver &driver, const LibraryModel &model,
                             GenerationOracle &oracle);

/// All public APIs ordered by descending sequence-pool potential, ties
/// by name; the generation stage iterates targets in this order.
std::vector<std::string> target_order(const LibraryModel &model, const SequencePool &pool);

}  // namespace masfuzz

#endif  // MASFUZZ_SYNTHESIZER_HPP_
