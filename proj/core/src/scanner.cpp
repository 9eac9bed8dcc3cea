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

#include "masfuzz/scanner.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "masfuzz/ctoken.hpp"
#include "masfuzz/error.hpp"

namespace masfuzz {

namespace {

using Kind = CToken::Kind;

const std::set<std::string> kStorageWords = {"static",   "extern",   "inline",  "register",
                                             "_Noreturn", "__inline", "__inline__"};
const std::set<std::string> kQualifierWords = {"const",      "volatile",     "restrict",
                                               "__restrict", "__restrict__", "_Atomic"};
const std::set<std::string> kTagWords = {"struct", "union", "enum"};
const std::set<std::string> kIntModifierWords = {"signed", "unsigned", "short", "long",
                                                 "int",    "char",     "float", "double",
                                                 "void",   "_Bool",    "bool"};

bool segment_match(std::string_view pat, std::string_view seg) {
  if (pat.empty()) return seg.empty();
  if (pat[0] == '*') {
    for (std::size_t k = 0; k <= seg.size(); ++k) {
      if (segment_match(pat.substr(1), seg.substr(k))) return true;
    }
    return false;
  }
  if (seg.empty()) return false;
  if (pat[0] == '?' || pat[0] == seg[0]) return segment_match(pat.substr(1), seg.substr(1));
  return false;
}

std::vector<std::string_view> split_path(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '/') {
      if (i > start) out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

bool segments_match(const std::vector<std::string_view> &pat,
                    const std::vector<std::string_view> &path, std::size_t pi, std::size_t si) {
  if (pi == pat.size()) return si == path.size();
  if (pat[pi] == "**") {
    for (std::size_t k = si; k <= path.size(); ++k) {
      if (segments_match(pat, path, pi + 1, k)) return true;
    }
    return false;
  }
  if (si == path.size()) return false;
  return segment_match(pat[pi], path[si]) && segments_match(pat, path, pi + 1, si + 1);
}

// Index of the token matching the opener at `pos`, or tokens.size() when
// unbalanced. Openers/closers are single-char puncts.
std::size_t find_matching(const std::vector<CToken> &toks, std::size_t pos, std::string_view open,
                          std::string_view close) {
  int depth = 0;
  for (std::size_t i = pos; i < toks.size(); ++i) {
    if (toks[i].kind != Kind::kPunct) continue;
    if (toks[i].text == open) ++depth;
    if (toks[i].text == close) {
      --depth;
      if (depth == 0) return i;
    }
  }
  return toks.size();
}

std::string join_tokens(const std::vector<CToken> &toks, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out += ' ';
    if (toks[i].kind == Kind::kString) {
      out += '"';
      out += toks[i].text;
      out += '"';
    } else {
      out += toks[i].text;
    }
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Splits the tokens of a parameter-list span at top-level commas.
std::vector<std::vector<CToken>> split_params(const std::vector<CToken> &toks, std::size_t begin,
                                              std::size_t end) {
  std::vector<std::vector<CToken>> groups;
  std::vector<CToken> cur;
  int depth = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const CToken &t = toks[i];
    if (t.kind == Kind::kPunct) {
      if (t.text == "(" || t.text == "[") ++depth;
      if (t.text == ")" || t.text == "]") --depth;
      if (t.text == "," && depth == 0) {
        groups.push_back(cur);
        cur.clear();
        continue;
      }
    }
    cur.push_back(t);
  }
  if (!cur.empty()) groups.push_back(cur);
  return groups;
}

struct TypedefOutcome {
  bool valid = false;
  std::string name;
  std::string spelling;
};

// Interprets the token span of one `typedef ... ;` statement (begin is
// the token after `typedef`, end is the `;`). Function-pointer typedefs
// and anonymous aggregates are skipped; tagged aggregate definitions map
// the alias onto "struct tag".
TypedefOutcome interpret_typedef(const std::vector<CToken> &toks, std::size_t begin,
                                 std::size_t end) {
  TypedefOutcome out;
  std::size_t brace = end;
  for (std::size_t i = begin; i < end; ++i) {
    if (toks[i].kind == Kind::kPunct && toks[i].text == "(") return out;
    if (toks[i].kind == Kind::kPunct && toks[i].text == "{") {
      brace = i;
      break;
    }
  }
  if (brace != end) {
    // typedef struct tag { ... } alias;
    if (brace < begin + 2) return out;  // anonymous aggregate
    if (toks[begin].kind != Kind::kIdentifier || !kTagWords.count(toks[begin].text)) return out;
    if (toks[begin + 1].kind != Kind::kIdentifier) return out;
    std::size_t close = find_matching(toks, brace, "{", "}");
    if (close >= end) return out;
    std::string alias;
    int stars = 0;
    for (std::size_t i = close + 1; i < end; ++i) {
      if (toks[i].kind == Kind::kIdentifier) alias = toks[i].text;
      if (toks[i].kind == Kind::kPunct && toks[i].text == "*") ++stars;
    }
    if (alias.empty()) return out;
    out.valid = true;
    out.name = alias;
    out.spelling = toks[begin].text + " " + toks[begin + 1].text;
    for (int i = 0; i < stars; ++i) out.spelling += " *";
    return out;
  }
  // typedef <spelling> alias;  (alias is the last identifier)
  std::size_t name_idx = end;
  for (std::size_t i = end; i > begin; --i) {
    if (toks[i - 1].kind == Kind::kIdentifier) {
      name_idx = i - 1;
      break;
    }
  }
  if (name_idx == end || name_idx == begin) return out;
  out.valid = true;
  out.name = toks[name_idx].text;
  out.spelling = join_tokens(toks, begin, name_idx);
  return out;
}

// Export/visibility macros in specifier position hide the true base.
// A candidate identifier is dropped when the spelling also carries an
// int-family word or an aggregate tag, or when a later candidate exists.
std::string strip_specifier_macros(const std::string &spelling) {
  std::vector<CToken> toks = tokenize_c(spelling);
  std::vector<bool> keep(toks.size(), true);
  std::vector<std::size_t> candidates;
  bool has_modifier = false, has_tag = false;
  bool after_tag = false;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const CToken &t = toks[i];
    if (t.kind != Kind::kIdentifier) {
      after_tag = false;
      continue;
    }
    if (kStorageWords.count(t.text)) {
      keep[i] = false;
      continue;
    }
    if (kQualifierWords.count(t.text)) continue;
    if (kTagWords.count(t.text)) {
      has_tag = true;
      after_tag = true;
      continue;
    }
    if (after_tag) {
      after_tag = false;  // tag name binds to the aggregate keyword
      continue;
    }
    if (kIntModifierWords.count(t.text)) {
      has_modifier = true;
      continue;
    }
    candidates.push_back(i);
  }
  if (has_tag || has_modifier) {
    for (std::size_t c : candidates) keep[c] = false;
  } else if (candidates.size() > 1) {
    for (std::size_t k = 0; k + 1 < candidates.size(); ++k) keep[candidates[k]] = false;
  }
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (!keep[i]) continue;
    if (!out.empty()) out += ' ';
    out += toks[i].text;
  }
  return out;
}

struct SplitParam {
  std::string type_spelling;
  std::string name;
  bool variadic = false;
};

// Separates the declarator name from the type in one parameter spelling.
// The name is the last free identifier provided the remainder still
// carries a base; otherwise the whole spelling is the type.
SplitParam split_param(const std::vector<CToken> &group) {
  SplitParam out;
  for (const auto &t : group) {
    if (t.kind == Kind::kPunct && t.text == "...") {
      out.variadic = true;
      out.type_spelling = "...";
      return out;
    }
  }
  std::vector<std::size_t> candidates;
  bool has_modifier = false, has_tag = false, after_tag = false;
  for (std::size_t i = 0; i < group.size(); ++i) {
    const CToken &t = group[i];
    if (t.kind != Kind::kIdentifier) {
      after_tag = false;
      continue;
    }
    if (kQualifierWords.count(t.text) || kStorageWords.count(t.text)) continue;
    if (kTagWords.count(t.text)) {
      has_tag = true;
      after_tag = true;
      continue;
    }
    if (after_tag) {
      after_tag = false;
      continue;
    }
    if (kIntModifierWords.count(t.text)) {
      has_modifier = true;
      continue;
    }
    candidates.push_back(i);
  }
  std::size_t name_idx = group.size();
  if (!candidates.empty() && (candidates.size() >= 2 || has_modifier || has_tag)) {
    name_idx = candidates.back();
    out.name = group[name_idx].text;
  }
  std::string type;
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (i == name_idx) continue;
    if (!type.empty()) type += ' ';
    type += group[i].text;
  }
  out.type_spelling = type;
  return out;
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
  return segments_match(split_path(pattern), split_path(path), 0, 0);
}

int count_branches(std::string_view body) {
  int edges = 0;
  for (const CToken &t : tokenize_c(body)) {
    if (t.kind == Kind::kIdentifier) {
      // `do` contributes nothing; its trailing `while` token carries
      // the loop condition's two edges.
      if (t.text == "if" || t.text == "while" || t.text == "for") edges += 2;
      if (t.text == "case" || t.text == "default") edges += 1;
    } else if (t.kind == Kind::kPunct) {
      if (t.text == "?" || t.text == "&&" || t.text == "||") edges += 2;
    }
  }
  return edges;
}

ParsedSource parse_source(std::string_view src) {
  ParsedSource out;
  const std::vector<CToken> toks = tokenize_c(src);
  const std::vector<CComment> comments = collect_comments(src);
  const std::size_t n = toks.size();

  auto doc_for_line = [&](int line) -> std::string {
    for (const CComment &c : comments) {
      if (c.line_end >= line - 2 && c.line_end <= line - 1) return c.text;
    }
    return "";
  };

  std::vector<CToken> spec;  // specifier run since the last boundary
  std::size_t i = 0;
  while (i < n) {
    const CToken &t = toks[i];
    if (t.kind == Kind::kPreprocessor) {
      ++i;
      continue;
    }
    if (t.kind == Kind::kIdentifier) {
      if (t.text == "typedef") {
        std::size_t semi = i + 1;
        int depth = 0;
        for (; semi < n; ++semi) {
          if (toks[semi].kind != Kind::kPunct) continue;
          if (toks[semi].text == "{" || toks[semi].text == "(") ++depth;
          if (toks[semi].text == "}" || toks[semi].text == ")") --depth;
          if (toks[semi].text == ";" && depth == 0) break;
        }
        if (semi < n) {
          TypedefOutcome td = interpret_typedef(toks, i + 1, semi);
          if (td.valid) out.typedefs[td.name] = td.spelling;
        }
        i = semi + 1;
        spec.clear();
        continue;
      }
      if (t.text == "__attribute__" || t.text == "__declspec" || t.text == "_Static_assert") {
        ++i;
        if (i < n && toks[i].kind == Kind::kPunct && toks[i].text == "(") {
          i = find_matching(toks, i, "(", ")") + 1;
        }
        continue;
      }
      if (t.text == "extern" && i + 1 < n && toks[i + 1].kind == Kind::kString) {
        // extern "C" blocks are transparent for declarations.
        i += 2;
        if (i < n && toks[i].kind == Kind::kPunct && toks[i].text == "{") ++i;
        continue;
      }
      spec.push_back(t);
      ++i;
      continue;
    }
    if (t.kind == Kind::kPunct) {
      if (t.text == ";") {
        spec.clear();
        ++i;
        continue;
      }
      if (t.text == "{") {
        // Aggregate definition or stray block in specifier position.
        i = find_matching(toks, i, "{", "}") + 1;
        spec.clear();
        continue;
      }
      if (t.text == "}") {
        spec.clear();
        ++i;
        continue;
      }
      if (t.text == "(") {
        // Function shape: specifier run, name, parameter list.
        if (spec.size() >= 2 && spec.back().kind == Kind::kIdentifier &&
            !is_c_keyword(spec.back().text)) {
          std::size_t close = find_matching(toks, i, "(", ")");
          if (close == n) break;
          ParsedFunction fn;
          fn.name = spec.back().text;
          fn.line = spec.front().line;
          fn.doc = doc_for_line(spec.front().line);
          for (std::size_t k = 0; k + 1 < spec.size(); ++k) {
            if (spec[k].kind == Kind::kIdentifier && kStorageWords.count(spec[k].text) &&
                spec[k].text == "static") {
              fn.is_static = true;
            }
            if (!fn.return_spelling.empty()) fn.return_spelling += ' ';
            fn.return_spelling += spec[k].text;
          }
          for (const auto &group : split_params(toks, i + 1, close)) {
            fn.param_spellings.push_back(join_tokens(group, 0, group.size()));
            for (const CToken &g : group) {
              if (g.kind == Kind::kPunct && g.text == "(") fn.parse_failed = true;
            }
          }
          // Trailing attribute macros between the parameter list and the
          // terminator are skipped.
          std::size_t j = close + 1;
          while (j < n && toks[j].kind == Kind::kIdentifier) {
            ++j;
            if (j < n && toks[j].kind == Kind::kPunct && toks[j].text == "(") {
              j = find_matching(toks, j, "(", ")") + 1;
            }
          }
          if (j < n && toks[j].kind == Kind::kPunct && toks[j].text == "{") {
            std::size_t body_close = find_matching(toks, j, "{", "}");
            if (body_close == n) break;
            fn.is_definition = true;
            fn.body_line_begin = toks[j].line;
            fn.body_line_end = toks[body_close].line;
            fn.body = trim(src.substr(toks[j].offset + 1, toks[body_close].offset - toks[j].offset - 1));
            out.functions.push_back(std::move(fn));
            i = body_close + 1;
            spec.clear();
            continue;
          }
          if (j < n && toks[j].kind == Kind::kPunct && toks[j].text == ";") {
            out.functions.push_back(std::move(fn));
            i = j + 1;
            spec.clear();
            continue;
          }
          // Not a function after all (function-pointer variable, macro
          // call with initializer, ...); skip to the next terminator.
          i = close + 1;
          spec.clear();
          continue;
        }
        i = find_matching(toks, i, "(", ")") + 1;
        continue;
      }
      spec.push_back(t);
      ++i;
      continue;
    }
    // Numbers, strings, char literals in specifier position carry no
    // declaration meaning at file scope.
    ++i;
  }
  return out;
}

bool has_entry_point(const ParsedSource &parsed) {
  for (const auto &fn : parsed.functions) {
    if (!fn.is_definition) continue;
    if (fn.name == "main" || fn.name == "LLVMFuzzerTestOneInput") return true;
  }
  return false;
}

namespace {

bool matches_any(const std::vector<std::string> &globs, const std::string &path) {
  for (const auto &g : globs) {
    if (glob_match(g, path)) return true;
  }
  return false;
}

std::string read_file(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

LibraryModel scan_library(const std::filesystem::path &root, const ScanConfig &config) {
  std::error_code ec;
  if (!std::filesystem::is_directory(root, ec)) {
    throw IoError("library root is not a readable directory: " + root.string());
  }

  std::vector<std::string> files;
  for (auto it = std::filesystem::recursive_directory_iterator(root, ec);
       it != std::filesystem::recursive_directory_iterator(); ++it) {
    if (!it->is_regular_file()) continue;
    std::string rel = std::filesystem::relative(it->path(), root).generic_string();
    std::string ext = it->path().extension().string();
    if (ext != ".h" && ext != ".c") continue;
    if (matches_any(config.exclusion_globs, rel)) continue;
    files.push_back(rel);
  }
  if (ec) throw IoError("cannot walk library root: " + ec.message());
  std::sort(files.begin(), files.end());

  LibraryModel model;
  model.root = root.generic_string();

  struct FileRecord {
    std::string rel;
    bool is_header = false;
    bool is_public_header = false;
    bool is_usage = false;
    ParsedSource parsed;
  };
  std::vector<FileRecord> records;
  for (const std::string &rel : files) {
    FileRecord rec;
    rec.rel = rel;
    rec.is_header = rel.size() > 2 && rel.substr(rel.size() - 2) == ".h";
    rec.is_public_header = rec.is_header && matches_any(config.public_header_globs, rel);
    rec.parsed = parse_source(read_file(root / rel));
    rec.is_usage = matches_any(config.usage_dir_globs, rel) || has_entry_point(rec.parsed);
    if (rec.is_usage) {
      rec.is_public_header = false;
      model.usage_files.push_back(rel);
    } else if (rec.is_public_header) {
      model.headers.push_back(rel);
    }
    records.push_back(std::move(rec));
  }

  // Typedefs visible in any non-usage header participate in resolution.
  for (const FileRecord &rec : records) {
    if (!rec.is_header || rec.is_usage) continue;
    for (const auto &[name, spelling] : rec.parsed.typedefs) {
      model.typedefs.emplace(name, spelling);
    }
  }

  // Bodies come from definitions in any non-usage file. Static
  // definitions are different functions and never attach.
  struct DefSite {
    const ParsedFunction *fn;
    const std::string *file;
  };
  std::map<std::string, DefSite> definitions;
  for (const FileRecord &rec : records) {
    if (rec.is_usage) continue;
    for (const auto &fn : rec.parsed.functions) {
      if (!fn.is_definition || fn.is_static) continue;
      definitions.emplace(fn.name, DefSite{&fn, &rec.rel});
    }
  }

  std::set<std::string> seen;
  for (const FileRecord &rec : records) {
    if (!rec.is_public_header) continue;
    for (const auto &fn : rec.parsed.functions) {
      if (fn.is_static || seen.count(fn.name)) continue;
      seen.insert(fn.name);

      ApiMetainfo api;
      api.name = fn.name;
      api.file = rec.rel;
      api.line = fn.line;
      api.doc = fn.doc;
      api.is_public = true;
      api.needs_oracle = fn.parse_failed;

      auto it = definitions.find(fn.name);
      if (it != definitions.end()) {
        const ParsedFunction *def = it->second.fn;
        api.body = def->body;
        api.body_file = *it->second.file;
        api.body_line_begin = def->body_line_begin;
        api.body_line_end = def->body_line_end;
        if (api.doc.empty()) api.doc = def->doc;
      }

      if (!api.needs_oracle) {
        try {
          NormalizedType ret =
              normalize_type(strip_specifier_macros(fn.return_spelling), model.typedefs);
          api.return_type = render_type(ret);
          for (const std::string &raw : fn.param_spellings) {
            std::vector<CToken> group = tokenize_c(raw);
            SplitParam sp = split_param(group);
            if (sp.variadic) {
              api.params.push_back({"", "..."});
              continue;
            }
            NormalizedType pt = normalize_type(sp.type_spelling, model.typedefs);
            if (pt.base == "void" && pt.pointer_depth == 0 && api.params.empty() &&
                fn.param_spellings.size() == 1 && sp.name.empty()) {
              break;  // (void) parameter list
            }
            api.params.push_back({sp.name, render_type(pt)});
          }
        } catch (const TypeNormalizationError &) {
          api.needs_oracle = true;
          api.params.clear();
          api.return_type = fn.return_spelling;
        }
      } else {
        api.return_type = fn.return_spelling;
      }

      model.branch_totals[api.name] = count_branches(api.body);
      model.apis.push_back(std::move(api));
    }
  }

  std::sort(model.apis.begin(), model.apis.end(), [](const ApiMetainfo &a, const ApiMetainfo &b) {
    return a.file != b.file ? a.file < b.file : a.line != b.line ? a.line < b.line : a.name < b.name;
  });

  if (model.apis.empty()) {
    throw EmptyModelError("no public API found under " + root.string());
  }
  return model;
}

}  // namespace masfuzz
