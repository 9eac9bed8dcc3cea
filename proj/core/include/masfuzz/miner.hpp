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

#ifndef MASFUZZ_MINER_HPP_
#define MASFUZZ_MINER_HPP_

#include <string>
#include <vector>

#include "masfuzz/compat.hpp"
#include "masfuzz/model.hpp"

namespace masfuzz {

struct MinerConfig {
  int max_len = 10;         // L, cap on MP and SEM sequence length
  int mp_sample_size = 32;  // paths kept per DFS start node
  int sem_batch_size = 16;  // APIs per oracle relation-inference request
  unsigned long long rng_seed = 1;
};

/// Call orderings mined from the library's usage files: per function
/// body, the source-order subsequence of public API calls, emitted when
/// it contains at least two calls. Unparsable files are skipped.
std::vector<ApiSequence> mine_usage_sequences(const LibraryModel &model);

/// All node-distinct paths of length <= max_len, walking edges from the
/// given start set; every prefix of a walk is itself a path. This is the
/// pre-sampling MP path universe.
std::vector<std::vector<std::string>> enumerate_mp_paths(const CompatibilityGraph &g,
                                                         const std::vector<std::string> &starts,
                                                         int max_len);

/// DFS path mining from zero-indegree nodes (all nodes when none exist),
/// then a seeded uniform down-sample of mp_sample_size paths per start.
std::vector<ApiSequence> mine_mp_sequences(const CompatibilityGraph &g, const MinerConfig &cfg);

/// Stable ids ("ue-0001", ...) assigned per dimension in pool order.
void assign_sequence_ids(std::vector<ApiSequence> &sequences);

}  // namespace masfuzz

#endif  // MASFUZZ_MINER_HPP_
