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

#ifndef MASFUZZ_CTOKEN_HPP_
#define MASFUZZ_CTOKEN_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace masfuzz {

// Lexical token of a C translation unit. Comments and whitespace are
// dropped during tokenization (comments are collected separately because
// doc extraction needs them); preprocessor directives are folded into a
// single token each so the declaration scanner can step over them.
struct CToken {
  enum class Kind {
    kIdentifier,   // identifiers and keywords
    kNumber,
    kString,       // text holds the raw inner contents, quotes stripped
    kCharLit,
    kPunct,        // text holds the operator spelling, e.g. "->", "&&"
    kPreprocessor  // text holds the full directive incl. continuations
  };

  Kind kind = Kind::kPunct;
  std::string text;
  int line = 1;           // 1-based line of the token's first character
  std::size_t offset = 0; // byte offset into the source
};

// A comment block as it appeared in the source. Consecutive line comments
// are merged into one block; the text has comment markers stripped.
struct CComment {
  std::string text;
  int line_begin = 1;
  int line_end = 1;
};

std::vector<CToken> tokenize_c(std::string_view src);
std::vector<CComment> collect_comments(std::string_view src);

bool is_c_keyword(std::string_view ident);

// Positions i such that tokens[i] is an identifier directly applied to an
// argument list, i.e. a call expression head in source order. Keywords,
// member accesses (a.f(), a->f()) and definitions that merely *declare*
// a function (detected by a preceding type token heuristic being absent)
// all still count here; callers filter by name against the API set.
std::vector<std::size_t> call_expression_heads(const std::vector<CToken> &tokens);

// Unescape the C escape sequences of a string-literal body ("\n", "\xNN",
// octal, ...). Unknown escapes are kept verbatim without the backslash.
std::string unescape_c_string(std::string_view body);

}  // namespace masfuzz

#endif  // MASFUZZ_CTOKEN_HPP_
