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

#include "masfuzz/mutation.hpp"

#include <algorithm>

#include "masfuzz/error.hpp"
#include "masfuzz/synthesizer.hpp"

namespace masfuzz {

const char *mutation_strategy_name(MutationStrategy s) {
  switch (s) {
    case MutationStrategy::kInsert:
      return "insert";
    case MutationStrategy::kReplace:
      return "replace";
    case MutationStrategy::kCombine:
      return "combine";
  }
  return "insert";
}

std::map<std::string, ApiEnergy> compute_energy(
    const LibraryModel &model, const CoverageLedger &ledger, const SequencePool &pool,
    const std::vector<std::vector<std::string>> &executed_sequences) {
  std::map<std::string, ApiEnergy> out;
  const auto &per_api = ledger.per_api();
  for (const auto &api : model.apis) {
    ApiEnergy e;
    e.api = api.name;
    auto it = per_api.find(api.name);
    if (it != per_api.end() && it->second.total > 0) {
      e.cov = static_cast<double>(it->second.covered) / static_cast<double>(it->second.total);
    }
    if (!executed_sequences.empty()) {
      std::size_t invoking = 0;
      for (const auto &seq : executed_sequences) {
        if (std::find(seq.begin(), seq.end(), api.name) != seq.end()) ++invoking;
      }
      e.freq = static_cast<double>(invoking) / static_cast<double>(executed_sequences.size());
    }
    e.potential = pool.potential(api.name);
    e.energy = (1.0 - e.cov) * (1.0 - e.freq) * e.potential;
    out[api.name] = std::move(e);
  }
  return out;
}

namespace {

bool precedes(const std::string &before, const std::string &head,
              const CompatibilityGraph &compat,
              const std::vector<SemanticRelation> &relations) {
  if (compat.has_edge(before, head)) return true;
  for (const auto &rel : relations) {
    if (rel.predecessor == before && rel.successor == head) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> spliced_sequence(const MutationPlan &plan,
                                          const std::vector<std::string> &injected) {
  const auto &parent = plan.parent_sequence;
  std::vector<std::string> child;
  switch (plan.strategy) {
    case MutationStrategy::kInsert:
      child.assign(parent.begin(), parent.begin() + plan.position);
      child.insert(child.end(), injected.begin(), injected.end());
      child.insert(child.end(), parent.begin() + plan.position, parent.end());
      break;
    case MutationStrategy::kReplace:
      child.assign(parent.begin(), parent.begin() + plan.position);
      child.insert(child.end(), injected.begin(), injected.end());
      child.insert(child.end(), parent.begin() + plan.position + plan.span_length, parent.end());
      break;
    case MutationStrategy::kCombine:
      child = parent;
      child.insert(child.end(), injected.begin(), injected.end());
      break;
  }
  return child;
}

std::optional<MutationPlan> plan_mutation(const FuzzDriver &driver,
                                          const std::map<std::string, ApiEnergy> &energies,
                                          const SequencePool &pool, const LibraryModel &model,
                                          const CompatibilityGraph &compat,
                                          const std::vector<SemanticRelation> &relations,
                                          Rng &rng) {
  // Pivot: highest energy among APIs that still have material to
  // inject. Map iteration order resolves ties by name.
  const ApiEnergy *pivot = nullptr;
  for (const auto &[name, e] : energies) {
    if (pool.longest_unused_any(name) == nullptr) continue;
    if (pivot == nullptr || e.energy > pivot->energy) pivot = &e;
  }
  if (pivot == nullptr) return std::nullopt;
  const ApiSequence *injected = pool.longest_unused_any(pivot->api);

  MutationPlan plan;
  plan.driver_id = driver.id;
  plan.pivot_api = pivot->api;
  plan.injected_sequence = injected->id;
  plan.parent_sequence = extract_driver_sequence(driver.source, model);

  // Draw order is part of the replay contract: strategy first, then
  // any positional randomness.
  switch (rng.below(3)) {
    case 0:
      plan.strategy = MutationStrategy::kInsert;
      break;
    case 1:
      plan.strategy = MutationStrategy::kReplace;
      break;
    default:
      plan.strategy = MutationStrategy::kCombine;
      break;
  }

  const std::size_t n = plan.parent_sequence.size();
  switch (plan.strategy) {
    case MutationStrategy::kInsert: {
      plan.position = 0;
      const std::string &head = injected->apis.front();
      for (std::size_t j = 0; j < n; ++j) {
        if (precedes(plan.parent_sequence[j], head, compat, relations)) {
          plan.position = j + 1;
          break;
        }
      }
      break;
    }
    case MutationStrategy::kReplace: {
      if (n == 0) {
        plan.position = 0;
        plan.span_length = 0;
        break;
      }
      // Uniform over all non-empty contiguous spans, enumerated by
      // (start, length).
      std::uint64_t k = rng.below(static_cast<std::uint64_t>(n) * (n + 1) / 2);
      for (std::size_t start = 0; start < n; ++start) {
        std::size_t options = n - start;
        if (k < options) {
          plan.position = start;
          plan.span_length = static_cast<std::size_t>(k) + 1;
          break;
        }
        k -= options;
      }
      break;
    }
    case MutationStrategy::kCombine:
      plan.position = n;
      break;
  }
  plan.target_sequence = spliced_sequence(plan, injected->apis);
  return plan;
}

FuzzDriver apply_mutation(const FuzzDriver &parent, const MutationPlan &plan,
                          GenerationOracle &oracle, const LibraryModel &model,
                          SequencePool &pool) {
  ApiSequence *injected = pool.find(plan.injected_sequence);
  if (injected == nullptr) {
    throw PreconditionError("mutation plan references unknown sequence " +
                            plan.injected_sequence);
  }
  injected->used = true;

  FuzzDriver child;
  child.id = parent.id + "-m1";
  child.target_api = parent.target_api;
  child.sequences_used = parent.sequences_used;
  child.sequences_used[std::string(dimension_name(injected->dimension))] = injected->id;
  child.lineage = parent.id;
  child.state = DriverState::kGenerated;

  // The regenerated source must realize the planned sequence exactly;
  // one retry, then the child is written off.
  PromptBundle bundle;
  bundle.target_api = parent.target_api;
  ApiSequence merged;
  merged.id = plan.injected_sequence + ":splice";
  merged.apis = plan.target_sequence;
  merged.dimension = injected->dimension;
  merged.provenance = "mutation:" + parent.id;
  bundle.backbone = std::move(merged);
  for (const auto &name : plan.target_sequence) {
    const ApiMetainfo *api = model.find(name);
    if (api != nullptr && !bundle.api_contexts.count(name)) {
      bundle.api_contexts[name] = api->return_type + " " + name;
    }
  }

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string source;
    try {
      source = oracle.generate(bundle);
    } catch (const OracleError &) {
      continue;
    }
    child.source = source;
    if (source.find("LLVMFuzzerTestOneInput") == std::string::npos) continue;
    // The generated source may append a cleanup epilogue of finalizer
    // calls after the planned calls; those do not break the plan.
    std::vector<std::string> got = extract_driver_sequence(source, model);
    bool realized =
        got.size() >= plan.target_sequence.size() &&
        std::equal(plan.target_sequence.begin(), plan.target_sequence.end(), got.begin());
    for (std::size_t j = plan.target_sequence.size(); realized && j < got.size(); ++j) {
      if (!is_finalizer_name(got[j])) realized = false;
    }
    if (realized) return child;
  }
  advance_driver(child, DriverState::kCompileFailed);
  advance_driver(child, DriverState::kRetired);
  return child;
}

}  // namespace masfuzz
