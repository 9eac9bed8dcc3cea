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

#include "masfuzz/type_norm.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "masfuzz/ctoken.hpp"
#include "masfuzz/error.hpp"

namespace masfuzz {

namespace {

// Multi-word spellings collapse to one canonical base ("unsigned long
// long int" -> "unsigned long long"). Order within the set is free in C.
const std::set<std::string> kIntModifiers = {"signed", "unsigned", "short", "long", "int",
                                             "char",   "float",    "double"};

const std::set<std::string> kPrimitiveBases = {
    "void",          "char",        "signed char",  "unsigned char",
    "short",         "unsigned short",
    "int",           "unsigned",    "unsigned int",
    "long",          "unsigned long",
    "long long",     "unsigned long long",
    "float",         "double",      "long double",
    "_Bool",         "bool",
    "size_t",        "ssize_t",     "ptrdiff_t",    "intptr_t",  "uintptr_t",
    "int8_t",        "int16_t",     "int32_t",      "int64_t",
    "uint8_t",       "uint16_t",    "uint32_t",     "uint64_t",
    "wchar_t",       "char16_t",    "char32_t",     "va_list",
    "intmax_t",      "uintmax_t",   "off_t",        "time_t",    "FILE"};

// Canonicalizes a bag of int-family modifier words. "int" is dropped when
// another modifier carries the width, "signed" is the default and dropped
// unless it is the whole spelling.
std::string canonical_int_base(std::vector<std::string> words) {
  int longs = 0;
  bool has_unsigned = false, has_signed = false, has_short = false;
  bool has_int = false, has_char = false, has_float = false, has_double = false;
  for (const auto &w : words) {
    if (w == "long") ++longs;
    else if (w == "unsigned") has_unsigned = true;
    else if (w == "signed") has_signed = true;
    else if (w == "short") has_short = true;
    else if (w == "int") has_int = true;
    else if (w == "char") has_char = true;
    else if (w == "float") has_float = true;
    else if (w == "double") has_double = true;
  }
  std::string base;
  if (has_double) {
    base = longs > 0 ? "long double" : "double";
  } else if (has_float) {
    base = "float";
  } else if (has_char) {
    if (has_unsigned) base = "unsigned char";
    else if (has_signed) base = "signed char";
    else base = "char";
  } else {
    if (has_short) base = "short";
    else if (longs >= 2) base = "long long";
    else if (longs == 1) base = "long";
    else base = "int";
    if (has_unsigned) {
      base = base == "int" ? "unsigned" : "unsigned " + base;
    }
    (void)has_int;
  }
  return base;
}

}  // namespace

bool is_primitive_base(std::string_view base) {
  return kPrimitiveBases.count(std::string(base)) > 0;
}

NormalizedType normalize_type(std::string_view raw, const TypedefTable &typedefs) {
  NormalizedType out;
  std::string working(raw);
  std::set<std::string> visited;  // typedef cycle guard

  for (;;) {
    std::vector<CToken> toks = tokenize_c(working);
    std::vector<std::string> base_words;
    std::string tag;  // struct/union/enum keyword, kept with the base
    out.pointer_depth = 0;

    bool saw_base_done = false;
    for (const auto &t : toks) {
      if (t.kind == CToken::Kind::kPunct) {
        if (t.text == "*") {
          ++out.pointer_depth;
          saw_base_done = true;
          continue;
        }
        if (t.text == "...") {
          out.is_variadic = true;
          continue;
        }
        if (t.text == "[" || t.text == "]") {
          // Array declarators decay to one pointer level. Extents are
          // irrelevant for compatibility so brackets count once.
          if (t.text == "[") ++out.pointer_depth;
          saw_base_done = true;
          continue;
        }
        if (t.text == "(" || t.text == ")") {
          throw TypeNormalizationError(std::string(raw));
        }
        continue;
      }
      if (t.kind == CToken::Kind::kNumber) continue;  // array extent
      if (t.kind != CToken::Kind::kIdentifier) {
        throw TypeNormalizationError(std::string(raw));
      }
      const std::string &w = t.text;
      if (w == "const") {
        out.is_const = true;
        continue;
      }
      if (w == "volatile") {
        out.is_volatile = true;
        continue;
      }
      if (w == "restrict" || w == "__restrict" || w == "__restrict__" || w == "register" ||
          w == "static" || w == "extern" || w == "inline" || w == "_Noreturn") {
        continue;
      }
      if (w == "struct" || w == "union" || w == "enum") {
        tag = w;
        continue;
      }
      if (saw_base_done) {
        // An identifier after '*' is the declarator name, not the type.
        continue;
      }
      if (kIntModifiers.count(w)) {
        base_words.push_back(w);
        continue;
      }
      if (!base_words.empty()) {
        // Two non-modifier identifiers in the specifier position means
        // the second is a declarator name; the base is already complete.
        saw_base_done = true;
        continue;
      }
      base_words.push_back(w);
      saw_base_done = true;
    }

    if (out.is_variadic && base_words.empty() && tag.empty()) {
      out.base.clear();
      out.is_primitive = false;
      return out;
    }
    if (base_words.empty() && tag.empty()) {
      throw TypeNormalizationError(std::string(raw));
    }

    std::string base;
    if (base_words.size() == 1 && !kIntModifiers.count(base_words[0])) {
      base = base_words[0];
    } else if (!base_words.empty() && kIntModifiers.count(base_words[0])) {
      base = canonical_int_base(base_words);
    } else if (!base_words.empty()) {
      base = base_words[0];
    }

    if (!tag.empty()) {
      base = base.empty() ? tag : tag + " " + base;
      out.base = base;
      out.is_primitive = false;
      return out;
    }

    // Typedef resolution: substitute and re-parse so pointer depths and
    // qualifiers from the defining spelling accumulate.
    auto it = typedefs.find(base);
    if (it != typedefs.end() && !visited.count(base)) {
      visited.insert(base);
      int carried_depth = out.pointer_depth;
      bool carried_const = out.is_const;
      bool carried_volatile = out.is_volatile;
      bool carried_variadic = out.is_variadic;
      working = it->second;
      NormalizedType inner = normalize_type(working, typedefs);
      inner.pointer_depth += carried_depth;
      inner.is_const = inner.is_const || carried_const;
      inner.is_volatile = inner.is_volatile || carried_volatile;
      inner.is_variadic = inner.is_variadic || carried_variadic;
      return inner;
    }

    out.base = base;
    out.is_primitive = is_primitive_base(base);
    return out;
  }
}

std::string render_type(const NormalizedType &t) {
  std::ostringstream os;
  if (t.is_const) os << "const ";
  if (t.is_volatile) os << "volatile ";
  os << t.base;
  for (int i = 0; i < t.pointer_depth; ++i) os << " *";
  if (t.is_variadic) os << (t.base.empty() ? "..." : " ...");
  return os.str();
}

}  // namespace masfuzz
