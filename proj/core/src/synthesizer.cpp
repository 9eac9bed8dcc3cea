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

#include "masfuzz/synthesizer.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "masfuzz/ctoken.hpp"
#include "masfuzz/error.hpp"

namespace masfuzz {

namespace {

std::string api_context_snippet(const ApiMetainfo &api) {
  std::ostringstream os;
  os << api.return_type << " " << api.name << "(";
  for (std::size_t i = 0; i < api.params.size(); ++i) {
    if (i > 0) os << ", ";
    os << api.params[i].type;
    if (!api.params[i].name.empty()) os << " " << api.params[i].name;
  }
  os << ")  /* " << api.file << ":" << api.line << " */";
  if (!api.doc.empty()) {
    os << "\n  doc: " << api.doc;
  }
  return os.str();
}

void add_contexts(PromptBundle &bundle, const LibraryModel &model,
                  const std::vector<std::string> &apis) {
  for (const auto &name : apis) {
    if (bundle.api_contexts.count(name)) continue;
    const ApiMetainfo *api = model.find(name);
    if (api != nullptr) bundle.api_contexts[name] = api_context_snippet(*api);
  }
}

}  // namespace

PromptBundle select_sequences(const std::string &target, SequencePool &pool,
                              const LibraryModel &model) {
  PromptBundle bundle;
  bundle.target_api = target;

  auto pick = [&](Dimension dim) -> std::optional<ApiSequence> {
    const ApiSequence *best = pool.longest_unused(target, dim);
    if (best == nullptr) return std::nullopt;
    pool.find(best->id)->used = true;
    return *best;
  };
  bundle.backbone = pick(Dimension::kUe);
  bundle.extension = pick(Dimension::kMp);
  bundle.complement = pick(Dimension::kSem);

  if (!bundle.backbone && !bundle.extension && !bundle.complement) {
    // Sequence-less target: a singleton keeps the API reachable.
    ApiSequence fallback;
    fallback.id = "fallback-" + target;
    fallback.apis = {target};
    fallback.dimension = Dimension::kSem;
    fallback.provenance = "fallback:" + target;
    fallback.used = true;
    bundle.complement = std::move(fallback);
  }

  add_contexts(bundle, model, {target});
  if (bundle.backbone) add_contexts(bundle, model, bundle.backbone->apis);
  if (bundle.extension) add_contexts(bundle, model, bundle.extension->apis);
  if (bundle.complement) add_contexts(bundle, model, bundle.complement->apis);
  return bundle;
}

std::vector<std::string> merge_bundle_sequence(const PromptBundle &bundle) {
  std::vector<std::string> calls;
  if (bundle.backbone) {
    calls = bundle.backbone->apis;
  } else if (bundle.extension) {
    calls = bundle.extension->apis;
  } else if (bundle.complement) {
    calls = bundle.complement->apis;
  }
  auto contains = [&](const std::string &name) {
    return std::find(calls.begin(), calls.end(), name) != calls.end();
  };

  // Coverage-extending MP calls are appended in chain order so their
  // producer/consumer threading stays intact.
  if (bundle.backbone && bundle.extension) {
    for (const auto &name : bundle.extension->apis) {
      if (!contains(name)) calls.push_back(name);
    }
  }
  // Semantic complement: calls ordered before the first shared API are
  // setup and go in front; the rest append. Existing order is never
  // rewritten (the backbone stays authoritative).
  if (bundle.complement && (bundle.backbone || bundle.extension)) {
    const auto &sem = bundle.complement->apis;
    std::size_t first_shared = sem.size();
    for (std::size_t i = 0; i < sem.size(); ++i) {
      if (contains(sem[i])) {
        first_shared = i;
        break;
      }
    }
    std::vector<std::string> prefix, suffix;
    for (std::size_t i = 0; i < sem.size(); ++i) {
      if (contains(sem[i])) continue;
      (i < first_shared ? prefix : suffix).push_back(sem[i]);
    }
    calls.insert(calls.begin(), prefix.begin(), prefix.end());
    calls.insert(calls.end(), suffix.begin(), suffix.end());
  }
  return calls;
}

bool is_finalizer_name(const std::string &name) {
  std::string l;
  for (char c : name) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return l.find("free") != std::string::npos || l.find("destroy") != std::string::npos ||
         l.find("close") != std::string::npos || l.find("release") != std::string::npos ||
         l.find("cleanup") != std::string::npos;
}

namespace {

struct LiveVar {
  std::string base;
  int depth = 0;
  std::string name;
  bool consumed = false;  // passed to a finalizer-shaped call
};

bool is_byte_base(const std::string &base) {
  return base == "char" || base == "unsigned char" || base == "signed char" || base == "uint8_t";
}

bool is_integer_base(const std::string &base) {
  static const std::set<std::string> kInts = {
      "int",      "unsigned", "unsigned int",  "long",      "unsigned long", "long long",
      "unsigned long long", "short", "unsigned short", "size_t", "ssize_t",  "ptrdiff_t",
      "int8_t",   "int16_t",  "int32_t",       "int64_t",   "uint8_t",       "uint16_t",
      "uint32_t", "uint64_t", "char",          "signed char", "unsigned char", "_Bool",
      "bool",     "intptr_t", "uintptr_t",     "intmax_t",  "uintmax_t",     "off_t",
      "time_t",   "wchar_t"};
  return kInts.count(base) > 0;
}

bool is_len_name(const std::string &name) {
  std::string l;
  for (char c : name) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return l == "len" || l == "length" || l == "size" || l == "sz" || l == "n" || l == "count" ||
         l == "nbytes" || l == "buflen" || l == "datalen";
}

std::string c_decl(const NormalizedType &t, const std::string &name) {
  std::string out = t.base;
  out += ' ';
  for (int i = 0; i < t.pointer_depth; ++i) out += '*';
  out += name;
  return out;
}

std::string header_basename(const std::string &rel) {
  std::size_t slash = rel.rfind('/');
  return slash == std::string::npos ? rel : rel.substr(slash + 1);
}

// Renders the harness. The byte cursor feeds primitive parameters;
// return values are tracked by (base, pointer depth) and thread into
// later parameters of the same shape, mirroring the propagation chains
// the MP dimension mined.
class TemplateRenderer {
 public:
  TemplateRenderer(const LibraryModel &model, const PromptBundle &bundle)
      : model_(model), bundle_(bundle) {}

  std::string render() {
    calls_ = merge_bundle_sequence(bundle_);
    std::ostringstream body;
    for (const std::string &name : calls_) render_call(body, name);
    render_cleanup(body);
    return assemble(body.str());
  }

 private:
  const LibraryModel &model_;
  const PromptBundle &bundle_;
  std::vector<std::string> calls_;
  std::vector<LiveVar> vars_;
  std::ostringstream decls_;
  bool used_u64_ = false, used_rest_ = false, used_cstr_ = false;
  int string_bufs_ = 0, out_params_ = 0, returns_ = 0;
  std::string rest_buf_, rest_len_;

  LiveVar *find_live(const std::string &base, int depth) {
    for (auto it = vars_.rbegin(); it != vars_.rend(); ++it) {
      if (it->base == base && it->depth == depth && !it->consumed) return &*it;
    }
    return nullptr;
  }

  std::string string_arg(const std::string &cast) {
    used_cstr_ = true;
    std::string buf = "sbuf" + std::to_string(string_bufs_++);
    decls_ << "  char " << buf << "[256];\n";
    return "(" + cast + ")fz_cstr(&cur, " + buf + ", sizeof " + buf + ")";
  }

  void render_call(std::ostringstream &body, const std::string &name) {
    const ApiMetainfo *api = model_.find(name);
    if (api == nullptr) return;
    if (api->needs_oracle) {
      body << "  /* " << name << ": unresolved signature, skipped by template */\n";
      return;
    }
    bool finalizer = is_finalizer_name(name);
    std::vector<std::string> args;
    for (std::size_t p = 0; p < api->params.size(); ++p) {
      const ApiParam &param = api->params[p];
      if (param.type == "...") break;
      NormalizedType pt;
      try {
        pt = normalize_type(param.type);
      } catch (const TypeNormalizationError &) {
        args.push_back("0");
        continue;
      }

      // (bytes, length) pair: the whole remaining input feeds a
      // parse-shaped API.
      if (is_byte_base(pt.base) && pt.pointer_depth == 1 && p + 1 < api->params.size()) {
        NormalizedType nt;
        bool next_int = false;
        try {
          nt = normalize_type(api->params[p + 1].type);
          next_int = nt.pointer_depth == 0 && is_integer_base(nt.base);
        } catch (const TypeNormalizationError &) {
        }
        if (next_int && (is_len_name(api->params[p + 1].name) || api->params[p + 1].name.empty())) {
          if (rest_buf_.empty()) {
            used_rest_ = true;
            rest_buf_ = "blob";
            rest_len_ = "blob_len";
            decls_ << "  size_t blob_len = 0;\n"
                   << "  const uint8_t *blob = fz_rest(&cur, &blob_len);\n";
          }
          args.push_back("(" + param.type + ")" + rest_buf_);
          args.push_back("(" + api->params[p + 1].type + ")" + rest_len_);
          ++p;
          continue;
        }
      }

      if (pt.pointer_depth == 0 && pt.is_primitive) {
        used_u64_ = true;
        if (pt.base == "float" || pt.base == "double" || pt.base == "long double") {
          args.push_back("(" + param.type + ")(fz_u64(&cur) % 65536)");
        } else if (pt.base == "_Bool" || pt.base == "bool") {
          args.push_back("(" + param.type + ")(fz_u64(&cur) & 1)");
        } else {
          args.push_back("(" + param.type + ")fz_u64(&cur)");
        }
        continue;
      }

      if (LiveVar *live = find_live(pt.base, pt.pointer_depth)) {
        args.push_back(live->name);
        if (finalizer) live->consumed = true;
        continue;
      }
      if (LiveVar *live = find_live(pt.base, pt.pointer_depth - 1)) {
        args.push_back("&" + live->name);
        if (finalizer) live->consumed = true;
        continue;
      }

      if (is_byte_base(pt.base) && pt.pointer_depth == 1) {
        args.push_back(string_arg(param.type));
        continue;
      }

      if (pt.pointer_depth >= 2 && !pt.is_primitive) {
        // Out-parameter shape: pass the address of a null handle and
        // treat it as live afterwards.
        NormalizedType inner = pt;
        inner.pointer_depth -= 1;
        std::string tmp = "out" + std::to_string(out_params_++);
        decls_ << "  " << c_decl(inner, tmp) << " = NULL;\n";
        args.push_back("&" + tmp);
        vars_.push_back({pt.base, pt.pointer_depth - 1, tmp, false});
        continue;
      }

      if (pt.pointer_depth >= 1) {
        args.push_back("NULL");
        continue;
      }
      // Unknown value type: a zeroed compound literal keeps the call
      // well formed when the type is complete.
      args.push_back("(" + param.type + "){0}");
    }

    NormalizedType ret;
    bool has_ret = false;
    try {
      ret = normalize_type(api->return_type);
      has_ret = !(ret.base == "void" && ret.pointer_depth == 0);
    } catch (const TypeNormalizationError &) {
    }

    body << "  ";
    if (has_ret) {
      NormalizedType decl_t = ret;
      decl_t.is_const = false;
      decl_t.is_volatile = false;
      std::string var = "v" + std::to_string(returns_++);
      body << c_decl(decl_t, var) << " = ";
      vars_.push_back({ret.base, ret.pointer_depth, var, false});
    }
    body << name << "(";
    for (std::size_t a = 0; a < args.size(); ++a) {
      if (a > 0) body << ", ";
      body << args[a];
    }
    body << ");\n";
  }

  void render_cleanup(std::ostringstream &body) {
    // Library-provided finalizers release surviving handles in reverse
    // creation order; anything else is left to the leak-checker policy.
    for (auto it = vars_.rbegin(); it != vars_.rend(); ++it) {
      if (it->consumed || it->depth == 0) continue;
      const ApiMetainfo *fin = nullptr;
      for (const auto &api : model_.apis) {
        if (!is_finalizer_name(api.name) || api.params.size() != 1 || api.needs_oracle) continue;
        NormalizedType pt;
        try {
          pt = normalize_type(api.params[0].type);
        } catch (const TypeNormalizationError &) {
          continue;
        }
        if (pt.base == it->base && pt.pointer_depth == it->depth) {
          fin = &api;
          break;
        }
      }
      if (fin != nullptr) {
        body << "  if (" << it->name << ") " << fin->name << "(" << it->name << ");\n";
        it->consumed = true;
      }
    }
  }

  std::string assemble(const std::string &body) {
    std::ostringstream out;
    out << "/* Fuzz driver targeting " << bundle_.target_api << ".\n";
    out << " * Call order merged from mined sequences:";
    for (const auto &c : calls_) out << " " << c;
    out << "\n */\n";
    out << "#include <stddef.h>\n#include <stdint.h>\n#include <stdlib.h>\n"
        << "#include <string.h>\n\n";
    std::set<std::string> emitted;
    for (const auto &h : model_.headers) {
      std::string base = header_basename(h);
      if (emitted.insert(base).second) out << "#include \"" << base << "\"\n";
    }
    out << "\nstruct fz_cur {\n  const uint8_t *data;\n  size_t size;\n  size_t pos;\n};\n";
    if (used_u64_) {
      out << "\nstatic uint64_t fz_u64(struct fz_cur *c) {\n"
          << "  uint64_t v = 0;\n  size_t i;\n"
          << "  for (i = 0; i < 8 && c->pos < c->size; ++i) {\n"
          << "    v = (v << 8) | c->data[c->pos++];\n  }\n  return v;\n}\n";
    }
    if (used_rest_) {
      out << "\nstatic const uint8_t *fz_rest(struct fz_cur *c, size_t *len) {\n"
          << "  const uint8_t *p = c->data + c->pos;\n"
          << "  *len = c->size - c->pos;\n  c->pos = c->size;\n  return p;\n}\n";
    }
    if (used_cstr_) {
      out << "\nstatic const char *fz_cstr(struct fz_cur *c, char *buf, size_t cap) {\n"
          << "  size_t n = 0;\n"
          << "  while (n + 1 < cap && c->pos < c->size) {\n"
          << "    char ch = (char)c->data[c->pos++];\n"
          << "    if (ch == '\\0') break;\n    buf[n++] = ch;\n  }\n"
          << "  buf[n] = '\\0';\n  return buf;\n}\n";
    }
    out << "\nint LLVMFuzzerTestOneInput(const uint8_t *data, size_t size) {\n"
        << "  struct fz_cur cur = {data, size, 0};\n"
        << "  (void)cur;\n";
    out << decls_.str();
    out << body;
    out << "  return 0;\n}\n";
    return out.str();
  }
};

}  // namespace

std::string StubGenerationOracle::generate(const PromptBundle &bundle) {
  return TemplateRenderer(model_, bundle).render();
}

std::string StubGenerationOracle::repair(const std::string &source,
                                         const std::string &diagnostics) {
  bool include_shaped = diagnostics.find("implicit declaration") != std::string::npos ||
                        diagnostics.find("unknown type name") != std::string::npos ||
                        diagnostics.find("undeclared") != std::string::npos ||
                        diagnostics.find("file not found") != std::string::npos;
  if (!include_shaped) return source;
  std::string patched;
  for (const auto &h : model_.headers) {
    std::string line = "#include \"" + header_basename(h) + "\"";
    if (source.find(line) == std::string::npos) patched += line + "\n";
  }
  return patched + source;
}

namespace {

constexpr const char *kGenerationSystemPrompt =
    R"(You write libFuzzer harnesses in C. Reply with a complete C source file and nothing else. The file must define exactly one entry point:
int LLVMFuzzerTestOneInput(const uint8_t *data, size_t size)
and must not define main.)";

std::string strip_fence(const std::string &reply) {
  std::size_t open = reply.find("```");
  if (open == std::string::npos) return reply;
  std::size_t body = reply.find('\n', open);
  if (body == std::string::npos) return reply;
  std::size_t close = reply.find("```", body);
  if (close == std::string::npos) return reply;
  return reply.substr(body + 1, close - body - 1);
}

}  // namespace

std::string ChatGenerationOracle::generate(const PromptBundle &bundle) {
  std::ostringstream user;
  user << "Write a fuzz driver for the C API `" << bundle.target_api << "`.\n\n";
  if (bundle.backbone) {
    user << "Usage-example sequence (preserve this call order as the structural backbone):\n";
    for (const auto &a : bundle.backbone->apis) user << "  " << a << "\n";
  }
  if (bundle.extension) {
    user << "Type-propagation sequence (incorporate these calls, threading each return value "
            "into the next compatible parameter):\n";
    for (const auto &a : bundle.extension->apis) user << "  " << a << "\n";
  }
  if (bundle.complement) {
    user << "Semantic ordering constraints (respect this relative order):\n";
    for (const auto &a : bundle.complement->apis) user << "  " << a << "\n";
  }
  user << "\nAPI reference:\n";
  for (const auto &[name, ctx] : bundle.api_contexts) {
    user << name << ":\n  " << ctx << "\n";
  }
  user << "\nDerive variable inputs from the data/size buffer. Do not read files or the "
          "network. Include the library headers by name.\n";
  return strip_fence(chat_->complete(kGenerationSystemPrompt, user.str()));
}

std::string ChatGenerationOracle::repair(const std::string &source,
                                         const std::string &diagnostics) {
  std::ostringstream user;
  user << "This fuzz driver fails to compile. Return the corrected complete file.\n\n"
       << "Source:\n```c\n" << source << "\n```\n\nCompiler diagnostics:\n" << diagnostics << "\n";
  return strip_fence(chat_->complete(kGenerationSystemPrompt, user.str()));
}

namespace {

// Exactly one fuzzer entry point and no main definition.
bool validate_driver_source(const std::string &source, std::string *why) {
  std::vector<CToken> toks = tokenize_c(source);
  int entries = 0;
  bool has_main = false;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].kind != CToken::Kind::kIdentifier) continue;
    if (toks[i + 1].kind != CToken::Kind::kPunct || toks[i + 1].text != "(") continue;
    if (toks[i].text == "LLVMFuzzerTestOneInput") ++entries;
    if (toks[i].text == "main") has_main = true;
  }
  if (entries == 0) {
    *why = "no LLVMFuzzerTestOneInput entry point";
    return false;
  }
  // Declaration + definition would double-count; more than two
  // occurrences is certainly a duplicate definition.
  if (entries > 2) {
    *why = "multiple fuzzer entry points";
    return false;
  }
  if (has_main) {
    *why = "driver defines its own main";
    return false;
  }
  return true;
}

}  // namespace

FuzzDriver generate_driver(const PromptBundle &bundle, GenerationOracle &oracle,
                           const std::string &driver_id) {
  FuzzDriver driver;
  driver.id = driver_id;
  driver.target_api = bundle.target_api;
  if (bundle.backbone) driver.sequences_used["UE"] = bundle.backbone->id;
  if (bundle.extension) driver.sequences_used["MP"] = bundle.extension->id;
  if (bundle.complement) driver.sequences_used["SEM"] = bundle.complement->id;
  driver.state = DriverState::kGenerated;

  std::string why;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string source;
    try {
      source = oracle.generate(bundle);
    } catch (const OracleError &e) {
      why = e.what();
      continue;
    }
    if (validate_driver_source(source, &why)) {
      driver.source = source;
      return driver;
    }
    driver.source = source;  // kept for the audit trail
  }
  advance_driver(driver, DriverState::kCompileFailed);
  return driver;
}

FuzzDriver repair_driver(const FuzzDriver &driver, const std::string &diagnostics,
                         GenerationOracle &oracle) {
  if (driver.state != DriverState::kCompileFailed) {
    throw PreconditionError("repair requires state compile_failed, driver " + driver.id +
                            " is " + std::string(driver_state_name(driver.state)));
  }
  if (driver.repair_attempts >= kMaxRepairAttempts) {
    throw PreconditionError("repair attempts exhausted for driver " + driver.id);
  }
  FuzzDriver revised = driver;
  revised.repair_attempts += 1;
  try {
    revised.source = oracle.repair(driver.source, diagnostics);
  } catch (const OracleError &) {
    // The failed oracle call still consumes the attempt.
  }
  return revised;
}

SeedCorpus build_seed_corpus(const FuzzDriver &driver, const LibraryModel &model,
                             GenerationOracle &oracle) {
  if (driver.state != DriverState::kCompiled) {
    throw PreconditionError("seed corpus requires a compiled driver, " + driver.id + " is " +
                            std::string(driver_state_name(driver.state)));
  }
  SeedCorpus corpus;
  corpus.target_driver = driver.id;
  std::set<std::string> seen;

  for (const std::string &name : extract_driver_sequence(driver.source, model)) {
    const ApiMetainfo *api = model.find(name);
    if (api == nullptr || api->doc.empty()) continue;
    // Quoted literals in documentation are format samples.
    const std::string &doc = api->doc;
    std::size_t pos = 0;
    while ((pos = doc.find('"', pos)) != std::string::npos) {
      std::size_t end = pos + 1;
      while (end < doc.size() && doc[end] != '"') {
        if (doc[end] == '\\' && end + 1 < doc.size()) ++end;
        ++end;
      }
      if (end >= doc.size()) break;
      std::string body = doc.substr(pos + 1, end - pos - 1);
      std::string bytes = unescape_c_string(body);
      if (!bytes.empty() && seen.insert(bytes).second) {
        corpus.seeds.push_back({bytes, "doc:" + name});
      }
      pos = end + 1;
    }
  }

  for (std::string &extra : oracle.extra_seeds(driver)) {
    if (!extra.empty() && seen.insert(extra).second) {
      corpus.seeds.push_back({std::move(extra), "oracle"});
    }
  }

  std::string fallback("\xde\xad\xbe\xef", 4);
  if (seen.insert(fallback).second) {
    corpus.seeds.push_back({fallback, "default"});
  }
  return corpus;
}

std::vector<std::string> target_order(const LibraryModel &model, const SequencePool &pool) {
  std::vector<std::string> names;
  for (const auto &api : model.apis) names.push_back(api.name);
  std::sort(names.begin(), names.end(), [&](const std::string &a, const std::string &b) {
    int pa = pool.potential(a), pb = pool.potential(b);
    return pa != pb ? pa > pb : a < b;
  });
  return names;
}

}  // namespace masfuzz
