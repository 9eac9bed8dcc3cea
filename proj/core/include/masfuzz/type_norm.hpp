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

#ifndef MASFUZZ_TYPE_NORM_HPP_
#define MASFUZZ_TYPE_NORM_HPP_

#include <map>
#include <string>
#include <string_view>

namespace masfuzz {

/// Canonical form of a C type spelling: base name, pointer depth,
/// qualifier flags. Typedef chains visible in the parsed headers are
/// resolved into the base; unresolved names compare by name.
struct NormalizedType {
  std::string base;
  int pointer_depth = 0;
  bool is_const = false;
  bool is_volatile = false;
  bool is_primitive = false;
  bool is_variadic = false;  // the "..." parameter marker

  bool operator==(const NormalizedType &) const = default;
};

// typedef name -> defining type spelling (e.g. "plist_t" -> "struct plist_private *").
using TypedefTable = std::map<std::string, std::string>;

/// Normalizes a C type spelling. Strips qualifiers into flags, counts
/// pointer depth, resolves typedef chains through `typedefs`, and flags
/// the char/int/float/size_t families as primitive.
/// Throws TypeNormalizationError for spellings this grammar cannot
/// represent (function pointers, multi-identifier bases, ...).
NormalizedType normalize_type(std::string_view raw, const TypedefTable &typedefs = {});

/// Renders back to a parseable spelling; normalize(render(t)) == t.
std::string render_type(const NormalizedType &t);

bool is_primitive_base(std::string_view base);

}  // namespace masfuzz

#endif  // MASFUZZ_TYPE_NORM_HPP_
