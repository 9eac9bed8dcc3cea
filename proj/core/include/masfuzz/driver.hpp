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

#ifndef MASFUZZ_DRIVER_HPP_
#define MASFUZZ_DRIVER_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "masfuzz/edit_distance.hpp"
#include "masfuzz/model.hpp"

namespace masfuzz {

enum class DriverState {
  kGenerated,
  kCompiled,
  kCompileFailed,
  kExecuted,
  kMutated,
  kRetired,
};

std::string_view driver_state_name(DriverState s);
DriverState driver_state_from_name(std::string_view name);

inline constexpr int kMaxRepairAttempts = 3;

/// A generated harness and its lifecycle. State only moves forward:
/// generated -> (compiled | compile_failed) -> executed ->
/// (mutated | retired); compile_failed may retry toward compiled until
/// the repair cap retires it.
struct FuzzDriver {
  std::string id;
  std::string target_api;
  std::string source;
  // Dimension tag ("UE"/"MP"/"SEM") -> id of the sequence used.
  std::map<std::string, std::string> sequences_used;
  DriverState state = DriverState::kGenerated;
  int repair_attempts = 0;
  std::string lineage;  // parent driver id, empty for roots

  std::string filename() const { return id + "_" + target_api + ".c"; }
};

/// Moves the driver to `next`, throwing PreconditionError for any
/// transition outside the lifecycle diagram. The repair and mutation
/// caps are enforced here as state assertions.
void advance_driver(FuzzDriver &driver, DriverState next);

/// Seq(D): ordered public-API call expressions extracted from the
/// driver source.
std::vector<std::string> extract_driver_sequence(const std::string &source,
                                                 const LibraryModel &model);

/// Seq(D) with per-token dimension tags for the novelty distance. A
/// token is tagged by the first bundle sequence containing it (UE, then
/// MP, then SEM); tokens from none of them inherit the driver's primary
/// dimension (backbone if present, else extension, else complement).
TaggedSequence tagged_driver_sequence(const FuzzDriver &driver, const SequencePool &pool,
                                      const LibraryModel &model);

}  // namespace masfuzz

#endif  // MASFUZZ_DRIVER_HPP_
