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

#ifndef MASFUZZ_SEMANTICS_HPP_
#define MASFUZZ_SEMANTICS_HPP_

#include <vector>

#include "masfuzz/miner.hpp"
#include "masfuzz/model.hpp"
#include "masfuzz/oracle.hpp"

namespace masfuzz {

/// Structured description of one API. Oracle failure (after the one
/// retry inside the chat oracle) yields a description marked
/// unavailable; the API still participates in UE/MP mining.
SemanticDescription extract_semantics(const ApiMetainfo &api, SemanticOracle &oracle);

/// Ordering relations between the described APIs. Relations naming
/// unknown APIs or relating an API to itself are dropped. Fewer than
/// two available descriptions yield the empty set without an oracle
/// call.
std::vector<SemanticRelation> infer_relations(const std::vector<SemanticDescription> &descs,
                                              SemanticOracle &oracle);

/// Treats relations as a precedence graph, breaks cycles by repeatedly
/// dropping the lexicographically largest (predecessor, successor) edge
/// on a cycle, and emits every maximal root-to-leaf chain, truncated at
/// cfg.max_len.
std::vector<ApiSequence> synthesize_sem_sequences(const std::vector<SemanticRelation> &relations,
                                                  const MinerConfig &cfg);

/// The three stages composed over the whole model; relation inference
/// runs in batches of cfg.sem_batch_size descriptions.
std::vector<ApiSequence> mine_sem_sequences(const LibraryModel &model, SemanticOracle &oracle,
                                            const MinerConfig &cfg);

}  // namespace masfuzz

#endif  // MASFUZZ_SEMANTICS_HPP_
