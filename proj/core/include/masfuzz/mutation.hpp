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

#ifndef MASFUZZ_MUTATION_HPP_
#define MASFUZZ_MUTATION_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "masfuzz/compat.hpp"
#include "masfuzz/coverage.hpp"
#include "masfuzz/driver.hpp"
#include "masfuzz/model.hpp"
#include "masfuzz/oracle.hpp"
#include "masfuzz/rng.hpp"
#include "masfuzz/synthesizer.hpp"

namespace masfuzz {

/// Mutation priority of one API.
struct ApiEnergy {
  std::string api;
  double cov = 0.0;   // branch coverage ratio of the API's body
  double freq = 0.0;  // fraction of executed drivers invoking it
  int potential = 0;  // mined sequences containing it
  double energy = 0.0;
};

/// energy = (1 - cov) * (1 - freq) * potential for every public API.
/// freq is 0 while nothing has executed. Deterministic.
std::map<std::string, ApiEnergy> compute_energy(
    const LibraryModel &model, const CoverageLedger &ledger, const SequencePool &pool,
    const std::vector<std::vector<std::string>> &executed_sequences);

enum class MutationStrategy { kInsert, kReplace, kCombine };

const char *mutation_strategy_name(MutationStrategy s);

struct MutationPlan {
  std::string driver_id;
  std::string pivot_api;
  std::string injected_sequence;  // sequence id, still unused at plan time
  MutationStrategy strategy = MutationStrategy::kInsert;
  std::size_t position = 0;     // insert boundary / replace span start
  std::size_t span_length = 0;  // replace only
  std::vector<std::string> parent_sequence;
  std::vector<std::string> target_sequence;  // planned child Seq(D)
};

/// Picks pivot = argmax energy among APIs that still have an unused
/// sequence (ties by name), injects the longest unused sequence holding
/// the pivot, and draws the strategy (uniform over the three) and
/// position from `rng` in that order. Insert goes to the earliest
/// boundary whose prefix already contains a type-compatibility or
/// semantic predecessor of the injected head, else boundary 0. Replace
/// substitutes a uniformly chosen non-empty contiguous span. Returns
/// nullopt when every sequence is used, which retires the driver.
std::optional<MutationPlan> plan_mutation(const FuzzDriver &driver,
                                          const std::map<std::string, ApiEnergy> &energies,
                                          const SequencePool &pool, const LibraryModel &model,
                                          const CompatibilityGraph &compat,
                                          const std::vector<SemanticRelation> &relations,
                                          Rng &rng);

/// Splice algebra shared by planning and verification: the child call
/// list the plan's strategy produces from parent + injected.
std::vector<std::string> spliced_sequence(const MutationPlan &plan,
                                          const std::vector<std::string> &injected);

/// Regenerates driver source realizing the planned sequence and flips
/// the injected sequence's used flag. The child carries lineage =
/// parent id and state `generated`; when the regenerated source fails
/// validation or its extracted sequence disagrees with the plan, one
/// retry is made and a second failure retires the child.
FuzzDriver apply_mutation(const FuzzDriver &parent, const MutationPlan &plan,
                          GenerationOracle &oracle, const LibraryModel &model,
                          SequencePool &pool);

}  // namespace masfuzz

#endif  // MASFUZZ_MUTATION_HPP_
