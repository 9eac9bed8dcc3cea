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

#include "masfuzz/ctoken.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace masfuzz {

namespace {

bool is_ident_start(char c) { return std::isalpha(uint8_t(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(uint8_t(c)) || c == '_'; }

// Multi-character operators, longest first.
constexpr std::array<std::string_view, 19> kMultiPunct = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=",
    "==",  "!=",  "&&",  "||", "+=", "-=", "*=", "/=", "%="};

}  // namespace

bool is_c_keyword(std::string_view ident) {
  static const std::unordered_set<std::string_view> kKeywords = {
      "auto",     "break",    "case",     "char",   "const",    "continue",
      "default",  "do",       "double",   "else",   "enum",     "extern",
      "float",    "for",      "goto",     "if",     "inline",   "int",
      "long",     "register", "restrict", "return", "short",    "signed",
      "sizeof",   "static",   "struct",   "switch", "typedef",  "union",
      "unsigned", "void",     "volatile", "while",  "_Bool",    "_Complex",
      "_Noreturn"};
  return kKeywords.count(ident) > 0;
}

std::vector<CToken> tokenize_c(std::string_view src) {
  std::vector<CToken> out;
  size_t i = 0;
  int line = 1;
  const size_t n = src.size();

  auto skip_string = [&](char quote) -> std::string {
    // i points at the opening quote.
    std::string body;
    ++i;
    while (i < n && src[i] != quote) {
      if (src[i] == '\\' && i + 1 < n) {
        body += src[i];
        body += src[i + 1];
        if (src[i + 1] == '\n') ++line;
        i += 2;
        continue;
      }
      if (src[i] == '\n') ++line;  // unterminated literal, be forgiving
      body += src[i++];
    }
    if (i < n) ++i;  // closing quote
    return body;
  };

  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(uint8_t(c))) {
      ++i;
      continue;
    }
    // Comments.
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      i += 2;
      while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      i = (i + 1 < n) ? i + 2 : n;
      continue;
    }
    // Preprocessor directive: swallow the logical line (with continuations).
    if (c == '#') {
      CToken t{CToken::Kind::kPreprocessor, "", line, i};
      size_t start = i;
      while (i < n) {
        if (src[i] == '\\' && i + 1 < n && src[i + 1] == '\n') {
          ++line;
          i += 2;
          continue;
        }
        if (src[i] == '\n') break;
        ++i;
      }
      t.text = std::string(src.substr(start, i - start));
      out.push_back(std::move(t));
      continue;
    }
    if (is_ident_start(c)) {
      CToken t{CToken::Kind::kIdentifier, "", line, i};
      size_t start = i;
      while (i < n && is_ident_char(src[i])) ++i;
      t.text = std::string(src.substr(start, i - start));
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(uint8_t(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(uint8_t(src[i + 1])))) {
      CToken t{CToken::Kind::kNumber, "", line, i};
      size_t start = i;
      while (i < n && (std::isalnum(uint8_t(src[i])) || src[i] == '.' ||
                       ((src[i] == '+' || src[i] == '-') && i > start &&
                        (src[i - 1] == 'e' || src[i - 1] == 'E' ||
                         src[i - 1] == 'p' || src[i - 1] == 'P')))) {
      ++i;
      }
      t.text = std::string(src.substr(start, i - start));
      out.push_back(std::move(t));
      continue;
    }
    if (c == '"') {
      CToken t{CToken::Kind::kString, "", line, i};
      t.text = skip_string('"');
      out.push_back(std::move(t));
      continue;
    }
    if (c == '\'') {
      CToken t{CToken::Kind::kCharLit, "", line, i};
      t.text = skip_string('\'');
      out.push_back(std::move(t));
      continue;
    }
    // Punctuation.
    CToken t{CToken::Kind::kPunct, "", line, i};
    std::string_view rest = src.substr(i);
    t.text = std::string(1, c);
    for (std::string_view op : kMultiPunct) {
      if (rest.substr(0, op.size()) == op) {
        t.text = std::string(op);
        break;
      }
    }
    i += t.text.size();
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<CComment> collect_comments(std::string_view src) {
  std::vector<CComment> out;
  size_t i = 0;
  int line = 1;
  const size_t n = src.size();

  auto strip_line_prefix = [](std::string_view s) -> std::string {
    // Drop leading whitespace and decorative '*' on block-comment lines.
    size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    if (b < s.size() && s[b] == '*' && (b + 1 >= s.size() || s[b + 1] != '/')) {
      ++b;
      if (b < s.size() && s[b] == ' ') ++b;
    }
    return std::string(s.substr(b));
  };

  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      ++i;
      while (i < n && src[i] != quote) {
        if (src[i] == '\\' && i + 1 < n) {
          if (src[i + 1] == '\n') ++line;
          i += 2;
          continue;
        }
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i < n) ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      int begin = line;
      size_t start = i + 2;
      if (start < n && (src[start] == '/' || src[start] == '!')) ++start;  // /// or //!
      while (i < n && src[i] != '\n') ++i;
      std::string text = strip_line_prefix(src.substr(start, i - start));
      // Merge with a directly preceding line comment block.
      if (!out.empty() && out.back().line_end == begin - 1) {
        out.back().text += "\n" + text;
        out.back().line_end = begin;
      } else {
        out.push_back({text, begin, begin});
      }
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      int begin = line;
      size_t start = i + 2;
      if (start < n && (src[start] == '*' || src[start] == '!')) ++start;  // /** or /*!
      i = start;
      while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      std::string_view raw = src.substr(start, (i <= n ? i : n) - start);
      i = (i + 1 < n) ? i + 2 : n;
      std::string text;
      size_t pos = 0;
      while (pos <= raw.size()) {
        size_t eol = raw.find('\n', pos);
        std::string_view ln =
            raw.substr(pos, eol == std::string_view::npos ? raw.size() - pos : eol - pos);
        std::string stripped = strip_line_prefix(ln);
        if (!text.empty()) text += "\n";
        text += stripped;
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
      }
      // Trim trailing whitespace/newlines.
      while (!text.empty() && (text.back() == '\n' || text.back() == ' ' || text.back() == '\t'))
        text.pop_back();
      while (!text.empty() && (text.front() == '\n')) text.erase(text.begin());
      out.push_back({text, begin, line});
      continue;
    }
    ++i;
  }
  return out;
}

std::vector<std::size_t> call_expression_heads(const std::vector<CToken> &tokens) {
  std::vector<std::size_t> heads;
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    const CToken &t = tokens[i];
    if (t.kind != CToken::Kind::kIdentifier) continue;
    if (is_c_keyword(t.text)) continue;
    const CToken &next = tokens[i + 1];
    if (next.kind != CToken::Kind::kPunct || next.text != "(") continue;
    if (i > 0) {
      const CToken &prev = tokens[i - 1];
      // Member access is not a plain call head for our purposes.
      if (prev.kind == CToken::Kind::kPunct && (prev.text == "." || prev.text == "->")) continue;
      // `struct foo (...)` style noise.
      if (prev.kind == CToken::Kind::kIdentifier &&
          (prev.text == "struct" || prev.text == "union" || prev.text == "enum")) continue;
    }
    heads.push_back(i);
  }
  return heads;
}

std::string unescape_c_string(std::string_view body) {
  std::string out;
  out.reserve(body.size());
  size_t i = 0;
  while (i < body.size()) {
    char c = body[i];
    if (c != '\\' || i + 1 >= body.size()) {
      out += c;
      ++i;
      continue;
    }
    char e = body[i + 1];
    i += 2;
    switch (e) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case '0': case '1': case '2': case '3':
      case '4': case '5': case '6': case '7': {
        int val = e - '0';
        int digits = 1;
        while (i < body.size() && digits < 3 && body[i] >= '0' && body[i] <= '7') {
          val = val * 8 + (body[i] - '0');
          ++i;
          ++digits;
        }
        out += char(val);
        break;
      }
      case 'x': {
        int val = 0;
        int digits = 0;
        while (i < body.size() && digits < 2 && std::isxdigit(uint8_t(body[i]))) {
          char h = body[i];
          val = val * 16 + (std::isdigit(uint8_t(h)) ? h - '0' : (std::tolower(h) - 'a' + 10));
          ++i;
          ++digits;
        }
        out += digits ? char(val) : 'x';
        break;
      }
      case '\\': out += '\\'; break;
      case '\'': out += '\''; break;
      case '"': out += '"'; break;
      case 'a': out += '\a'; break;
      case 'b': out += '\b'; break;
      case 'f': out += '\f'; break;
      case 'v': out += '\v'; break;
      default: out += e; break;
    }
  }
  return out;
}

}  // namespace masfuzz
