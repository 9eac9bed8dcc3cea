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

#ifndef MASFUZZ_COMPAT_HPP_
#define MASFUZZ_COMPAT_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "masfuzz/model.hpp"

namespace masfuzz {

/// Directed graph over the public API set; an edge a -> b means a's
/// return value can feed one of b's parameters.
struct CompatibilityGraph {
  std::vector<std::string> nodes;                          // sorted
  std::map<std::string, std::vector<std::string>> edges;   // sorted adjacency
  // APIs with unresolved signatures; kept as isolated nodes and never
  // used as traversal starts.
  std::set<std::string> unresolved;

  bool has_edge(std::string_view from, std::string_view to) const;
  std::vector<std::string> zero_indegree() const;
};

/// True iff some parameter of b has the same type as a's return value.
/// Primitive and void return types never propagate; const is ignored;
/// pointer depth must match exactly except that a value and a one-level
/// pointer of the same struct base are considered compatible.
bool compatible(const ApiMetainfo &a, const ApiMetainfo &b);

CompatibilityGraph build_compat_graph(const LibraryModel &model);

}  // namespace masfuzz

#endif  // MASFUZZ_COMPAT_HPP_
