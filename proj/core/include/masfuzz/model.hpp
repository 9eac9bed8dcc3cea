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

#ifndef MASFUZZ_MODEL_HPP_
#define MASFUZZ_MODEL_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "masfuzz/type_norm.hpp"

namespace masfuzz {

/// The three mining dimensions. UE sequences come from real call
/// orderings in examples/tests, MP sequences from type-compatibility
/// paths, SEM sequences from oracle-inferred ordering relations.
enum class Dimension { kUe, kMp, kSem };

std::string_view dimension_name(Dimension d);
Dimension dimension_from_name(std::string_view name);

struct ApiParam {
  std::string name;  // may be empty for unnamed parameters
  std::string type;  // normalized spelling, render_type() output
};

/// One public API: signature, location, doc comment, body.
struct ApiMetainfo {
  std::string name;
  std::vector<ApiParam> params;
  std::string return_type;
  std::string file;
  int line = 1;
  std::string doc;   // empty when no comment precedes the declaration
  std::string body;  // empty for declaration-only APIs
  // Definition span, used to attribute covered branches to this API.
  // Empty/zero when the body was not found in the scanned tree.
  std::string body_file;
  int body_line_begin = 0;
  int body_line_end = 0;
  bool is_public = true;
  // Macro-obscured signature the grammar could not resolve; routed to
  // the semantic oracle and excluded from MP mining under the stub.
  bool needs_oracle = false;

  bool operator==(const ApiMetainfo &) const = default;
};

/// Immutable snapshot of a scanned library: the public API surface,
/// file classification, and the static branch totals that seed the
/// coverage ledger denominators.
struct LibraryModel {
  std::string root;
  std::vector<ApiMetainfo> apis;  // ordered by file, then line
  std::vector<std::string> headers;
  std::vector<std::string> usage_files;
  std::map<std::string, int> branch_totals;
  TypedefTable typedefs;

  const ApiMetainfo *find(std::string_view name) const;
  bool contains(std::string_view name) const;
};

/// An ordered API list tagged with the dimension that mined it.
struct ApiSequence {
  std::string id;  // pool-unique, e.g. "mp-0003"
  std::vector<std::string> apis;
  Dimension dimension = Dimension::kUe;
  // UE: "file:first_line-last_line"; MP: the graph path; SEM: oracle
  // transcript id or "fallback:<api>".
  std::string provenance;
  bool used = false;
};

/// All mined sequences across the three dimensions. Selection marks
/// sequences used; a used sequence is never handed out again.
struct SequencePool {
  std::vector<ApiSequence> sequences;

  ApiSequence *find(std::string_view id);
  const ApiSequence *find(std::string_view id) const;
  /// Number of distinct sequences containing `api` (the mutation
  /// engine's `potential`).
  int potential(std::string_view api) const;
  /// Longest unused sequence of `dim` containing `api`; ties broken by
  /// lexicographic api list. Null when none qualifies.
  const ApiSequence *longest_unused(std::string_view api, Dimension dim) const;
  /// Longest unused sequence containing `api` across all dimensions.
  const ApiSequence *longest_unused_any(std::string_view api) const;
};

struct SemanticDescription {
  std::string api;
  std::string summary;
  std::string role;
  std::vector<std::string> preconditions;
  bool available = true;  // false after oracle failure; API still mines UE/MP
};

struct SemanticRelation {
  std::string predecessor;
  std::string successor;
  std::string rationale;

  bool operator==(const SemanticRelation &) const = default;
};

}  // namespace masfuzz

#endif  // MASFUZZ_MODEL_HPP_
