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

#ifndef MASFUZZ_SCANNER_HPP_
#define MASFUZZ_SCANNER_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "masfuzz/model.hpp"

namespace masfuzz {

/// File classification rules for a library tree. Globs are matched
/// against '/'-separated paths relative to the scan root; `*` stays
/// within one path segment, `**` crosses segments.
struct ScanConfig {
  std::vector<std::string> public_header_globs = {"include/**/*.h", "*.h"};
  std::vector<std::string> usage_dir_globs = {"examples/**", "example/**", "tests/**",
                                              "test/**", "fuzz/**"};
  std::vector<std::string> exclusion_globs;
};

bool glob_match(std::string_view pattern, std::string_view path);

/// A function-shaped declaration or definition found in one file.
/// Spellings are raw source text; normalization happens downstream.
struct ParsedFunction {
  std::string name;
  std::string return_spelling;
  std::vector<std::string> param_spellings;  // "..." kept as written
  std::string doc;   // comment block ending just above the declaration
  std::string body;  // text between the braces, empty for declarations
  int line = 1;
  int body_line_begin = 0;  // line of the opening brace, 0 for declarations
  int body_line_end = 0;
  bool is_static = false;
  bool is_definition = false;
  bool parse_failed = false;  // signature the grammar could not resolve
};

struct ParsedSource {
  std::vector<ParsedFunction> functions;
  TypedefTable typedefs;
};

/// Parses top-level typedefs and function declarations/definitions from
/// one translation unit. Never throws on malformed constructs; those
/// yield parse_failed entries or are skipped.
ParsedSource parse_source(std::string_view src);

/// True when the source defines a program entry point (main or a fuzzer
/// entry), which classifies the file as a usage example.
bool has_entry_point(const ParsedSource &parsed);

/// Static count of conditional edges in a function body: if and loop
/// heads contribute 2, each case/default label 1, ternary and
/// short-circuit operators 2. Declaration-only bodies count 0.
int count_branches(std::string_view body);

/// Scans the tree into an immutable LibraryModel: public APIs from the
/// configured headers, bodies attached from definitions anywhere in the
/// library files, usage files classified by directory or entry point.
/// Throws IoError for an unreadable root and EmptyModelError when no
/// public API is found.
LibraryModel scan_library(const std::filesystem::path &root, const ScanConfig &config = {});

}  // namespace masfuzz

#endif  // MASFUZZ_SCANNER_HPP_
