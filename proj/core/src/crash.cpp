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

#include "masfuzz/crash.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "masfuzz/error.hpp"

namespace masfuzz {

std::string_view sanitizer_kind_name(SanitizerKind k) {
  switch (k) {
    case SanitizerKind::kAddrViolation:
      return "addr-violation";
    case SanitizerKind::kUninitRead:
      return "uninit-read";
    case SanitizerKind::kLeak:
      return "leak";
    case SanitizerKind::kAssertion:
      return "assertion";
    case SanitizerKind::kTimeout:
      return "timeout";
    case SanitizerKind::kOther:
      return "other";
  }
  return "other";
}

SanitizerKind sanitizer_kind_from_name(std::string_view name) {
  if (name == "addr-violation") return SanitizerKind::kAddrViolation;
  if (name == "uninit-read") return SanitizerKind::kUninitRead;
  if (name == "leak") return SanitizerKind::kLeak;
  if (name == "assertion" || name == "assert") return SanitizerKind::kAssertion;
  if (name == "timeout") return SanitizerKind::kTimeout;
  return SanitizerKind::kOther;
}

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::kUnclassified:
      return "unclassified";
    case Classification::kApiMisuse:
      return "api_misuse";
    case Classification::kLibraryBug:
      return "library_bug";
  }
  return "unclassified";
}

Classification classification_from_name(std::string_view name) {
  if (name == "api_misuse") return Classification::kApiMisuse;
  if (name == "library_bug") return Classification::kLibraryBug;
  return Classification::kUnclassified;
}

namespace {

bool all_digits(const std::string &s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

// "file:line:col" or "file:line" or bare module path.
void split_location(const std::string &loc, std::string *file, int *line) {
  std::size_t c1 = loc.rfind(':');
  if (c1 == std::string::npos || c1 == 0) {
    *file = loc;
    *line = 0;
    return;
  }
  std::string last = loc.substr(c1 + 1);
  std::size_t c2 = loc.rfind(':', c1 - 1);
  std::string mid =
      c2 == std::string::npos ? std::string() : loc.substr(c2 + 1, c1 - c2 - 1);
  if (all_digits(mid) && all_digits(last)) {
    *file = loc.substr(0, c2);
    *line = std::atoi(mid.c_str());
  } else if (all_digits(last)) {
    *file = loc.substr(0, c1);
    *line = std::atoi(last.c_str());
  } else {
    *file = loc;
    *line = 0;
  }
}

}  // namespace

std::pair<SanitizerKind, std::vector<StackFrame>> parse_crash_report(const std::string &text) {
  SanitizerKind kind = SanitizerKind::kOther;
  auto has = [&](const char *needle) { return text.find(needle) != std::string::npos; };
  if (has("use-of-uninitialized-value") || has("MemorySanitizer")) {
    kind = SanitizerKind::kUninitRead;
  } else if (has("LeakSanitizer") || has("detected memory leaks")) {
    kind = SanitizerKind::kLeak;
  } else if (has("Assertion") || has("assert(")) {
    kind = SanitizerKind::kAssertion;
  } else if (has("libFuzzer: timeout") || has("timeout after")) {
    kind = SanitizerKind::kTimeout;
  } else if (has("AddressSanitizer") || has("SEGV") || has("deadly signal") ||
             has("buffer-overflow") || has("use-after")) {
    kind = SanitizerKind::kAddrViolation;
  }

  // ASAN frame shape: "    #0 0xADDR in symbol file:line:col".
  std::vector<StackFrame> frames;
  std::istringstream lines(text);
  std::string line;
  int expected = 0;
  while (std::getline(lines, line)) {
    std::size_t hash = line.find('#');
    if (hash == std::string::npos) continue;
    std::size_t pos = hash + 1;
    std::size_t digits = pos;
    while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits]))) {
      ++digits;
    }
    if (digits == pos) continue;
    int index = std::atoi(line.substr(pos, digits - pos).c_str());
    if (index == 0) {
      // A fresh stack; sanitizers print several (fault, alloc site...),
      // only the fault stack is kept.
      if (expected > 0) break;
    } else if (index != expected) {
      continue;
    }
    expected = index + 1;

    StackFrame frame;
    std::size_t in_pos = line.find(" in ", digits);
    if (in_pos != std::string::npos) {
      std::size_t sym_begin = in_pos + 4;
      std::size_t sym_end = line.find(' ', sym_begin);
      if (sym_end == std::string::npos) {
        frame.symbol = line.substr(sym_begin);
      } else {
        frame.symbol = line.substr(sym_begin, sym_end - sym_begin);
        std::string loc = line.substr(sym_end + 1);
        while (!loc.empty() && loc.back() == ')') loc.pop_back();
        while (!loc.empty() && loc.front() == '(') loc.erase(loc.begin());
        split_location(loc, &frame.file, &frame.line);
      }
    } else {
      // "(module+0xOFFSET)" frames carry no symbol information.
      std::size_t paren = line.find('(', digits);
      if (paren == std::string::npos) continue;
      std::size_t close = line.find(')', paren);
      std::string module = line.substr(paren + 1, close - paren - 1);
      std::size_t plus = module.find('+');
      frame.file = plus == std::string::npos ? module : module.substr(0, plus);
    }
    frames.push_back(std::move(frame));
  }
  return {kind, std::move(frames)};
}

namespace {

std::set<std::string> library_files(const LibraryModel &model) {
  std::set<std::string> files;
  for (const auto &api : model.apis) {
    if (!api.file.empty()) files.insert(api.file);
    if (!api.body_file.empty()) files.insert(api.body_file);
  }
  for (const auto &h : model.headers) files.insert(h);
  return files;
}

bool path_matches(const std::string &full, const std::string &rel) {
  if (full == rel) return true;
  if (full.size() > rel.size() && full.compare(full.size() - rel.size(), rel.size(), rel) == 0 &&
      full[full.size() - rel.size() - 1] == '/') {
    return true;
  }
  return false;
}

bool file_in_library(const std::string &file, const std::set<std::string> &lib_files) {
  if (file.empty()) return false;
  for (const auto &rel : lib_files) {
    if (path_matches(file, rel)) return true;
  }
  return false;
}

std::string basename_of(const std::string &path) {
  std::size_t slash = path.rfind('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex8(std::uint64_t v) {
  static const char *kHex = "0123456789abcdef";
  std::string out;
  for (int i = 7; i >= 0; --i) out += kHex[(v >> (i * 4)) & 0xF];
  return out;
}

}  // namespace

std::string make_dedup_key(SanitizerKind kind, const std::vector<StackFrame> &stack,
                           const LibraryModel &model) {
  std::set<std::string> lib = library_files(model);
  std::vector<const StackFrame *> picked;
  for (const auto &frame : stack) {
    if (file_in_library(frame.file, lib)) picked.push_back(&frame);
    if (picked.size() == 3) break;
  }
  if (picked.empty()) {
    for (const auto &frame : stack) {
      picked.push_back(&frame);
      if (picked.size() == 3) break;
    }
  }
  std::string raw{sanitizer_kind_name(kind)};
  std::string pretty = raw;
  for (const StackFrame *frame : picked) {
    std::string token = frame->symbol.empty() ? basename_of(frame->file) : frame->symbol;
    raw += "|" + frame->symbol + "@" + frame->file + ":" + std::to_string(frame->line);
    pretty += "-" + token;
  }
  std::string safe;
  for (char c : pretty) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    safe += ok ? c : '_';
  }
  return safe + "-" + hex8(fnv1a(raw));
}

std::vector<CrashRecord> dedup_crashes(const std::vector<CrashEvent> &events,
                                       const LibraryModel &model) {
  std::map<std::string, CrashRecord> by_key;
  for (const auto &event : events) {
    auto [kind, frames] = parse_crash_report(event.crash.report_text);
    if (kind == SanitizerKind::kOther) {
      // Engine-provided kind backs up reports that resist parsing.
      kind = sanitizer_kind_from_name(event.crash.kind);
    }
    std::string key = make_dedup_key(kind, frames, model);
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      CrashRecord record;
      record.driver_id = event.driver_id;
      record.input = event.crash.input;
      record.sanitizer_kind = kind;
      record.stack = std::move(frames);
      record.dedup_key = key;
      record.report_text = event.crash.report_text;
      by_key.emplace(std::move(key), std::move(record));
    } else if (!event.crash.input.empty() && event.crash.input != it->second.input) {
      it->second.alternate_inputs.push_back(event.crash.input);
    }
  }
  std::vector<CrashRecord> records;
  records.reserve(by_key.size());
  for (auto &[key, record] : by_key) records.push_back(std::move(record));
  return records;
}

CrashRecord classify_crash(CrashRecord record, const FuzzDriver &driver,
                           const LibraryModel &model, AnalysisOracle &oracle) {
  if (record.classification != Classification::kUnclassified) {
    throw PreconditionError("crash " + record.dedup_key + " is already classified");
  }
  std::set<std::string> lib = library_files(model);

  CrashContext ctx;
  ctx.driver_source = driver.source;
  ctx.sanitizer_kind = std::string(sanitizer_kind_name(record.sanitizer_kind));
  std::ostringstream stack_text;
  for (std::size_t i = 0; i < record.stack.size(); ++i) {
    const StackFrame &f = record.stack[i];
    stack_text << "#" << i << " " << (f.symbol.empty() ? "?" : f.symbol) << " " << f.file << ":"
               << f.line << "\n";
  }
  ctx.stack_text = record.stack.empty() ? record.report_text : stack_text.str();

  // Innermost frame that resolves to driver or library code decides
  // where the fault sits; sanitizer runtime frames are skipped.
  std::string driver_file = driver.filename();
  for (const StackFrame &frame : record.stack) {
    if (path_matches(frame.file, driver_file) || frame.file == driver_file) {
      ctx.fault_in_driver = true;
      break;
    }
    if (!file_in_library(frame.file, lib)) continue;
    const ApiMetainfo *api = model.find(frame.symbol);
    if (api == nullptr) {
      for (const auto &candidate : model.apis) {
        if (candidate.body_file.empty()) continue;
        if (path_matches(frame.file, candidate.body_file) &&
            frame.line >= candidate.body_line_begin && frame.line <= candidate.body_line_end) {
          api = &candidate;
          break;
        }
      }
    }
    if (api != nullptr) {
      ctx.faulting_api = api->name;
      ctx.faulting_api_doc = api->doc;
    }
    break;
  }

  try {
    CrashVerdict verdict = oracle.classify(ctx);
    record.classification = verdict.kind == CrashVerdict::Kind::kApiMisuse
                                ? Classification::kApiMisuse
                                : Classification::kLibraryBug;
    record.rationale = verdict.rationale;
  } catch (const OracleError &e) {
    record.needs_review = true;
    record.rationale = std::string("analysis oracle failed: ") + e.what();
  }
  return record;
}

}  // namespace masfuzz
