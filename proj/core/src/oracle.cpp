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

#include "masfuzz/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "masfuzz/error.hpp"

namespace masfuzz {

using nlohmann::json;

namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string collapse_ws(std::string_view s) {
  std::string out;
  bool in_ws = true;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!in_ws) out += ' ';
      in_ws = true;
    } else {
      out += c;
      in_ws = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::string first_sentence(std::string_view doc) {
  std::string flat = collapse_ws(doc);
  std::size_t dot = flat.find(". ");
  if (dot != std::string::npos) return flat.substr(0, dot + 1);
  if (!flat.empty() && flat.back() == '.') return flat;
  return flat;
}

// Trims a chat reply down to its JSON payload; models often wrap JSON
// in a fenced code block.
std::string strip_code_fence(const std::string &reply) {
  std::size_t open = reply.find("```");
  if (open == std::string::npos) return reply;
  std::size_t body = reply.find('\n', open);
  if (body == std::string::npos) return reply;
  std::size_t close = reply.find("```", body);
  if (close == std::string::npos) return reply;
  return reply.substr(body + 1, close - body - 1);
}

json parse_reply_json(const std::string &reply) {
  return json::parse(strip_code_fence(reply));
}

// Words are matched case-insensitively; the api name after the keyword
// must be a full identifier token.
std::vector<std::string> names_after_keyword(const std::string &text_lower,
                                             const std::string &keyword,
                                             const std::set<std::string> &known_lower) {
  std::vector<std::string> hits;
  std::size_t pos = 0;
  while ((pos = text_lower.find(keyword, pos)) != std::string::npos) {
    std::size_t start = pos + keyword.size();
    while (start < text_lower.size() &&
           std::isspace(static_cast<unsigned char>(text_lower[start]))) {
      ++start;
    }
    std::size_t end = start;
    while (end < text_lower.size() &&
           (std::isalnum(static_cast<unsigned char>(text_lower[end])) ||
            text_lower[end] == '_')) {
      ++end;
    }
    std::string word = text_lower.substr(start, end - start);
    if (known_lower.count(word)) hits.push_back(word);
    pos = end;
  }
  return hits;
}

}  // namespace

HttpChatOracle::HttpChatOracle(HttpOracleConfig config) : config_(std::move(config)) {}

std::string HttpChatOracle::complete(const std::string &system_prompt,
                                     const std::string &user_prompt) {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);

  json body = {
      {"model", config_.model},
      {"temperature", config_.temperature},
      {"messages",
       {{{"role", "system"}, {"content", system_prompt}},
        {{"role", "user"}, {"content", user_prompt}}}},
  };
  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  auto res = client.Post(config_.path, headers, body.dump(), "application/json");
  if (!res) {
    throw OracleError("chat backend unreachable: " + config_.base_url +
                      " (" + httplib::to_string(res.error()) + ")");
  }
  if (res->status != 200) {
    throw OracleError("chat backend returned HTTP " + std::to_string(res->status));
  }
  try {
    json reply = json::parse(res->body);
    std::string content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    if (content.empty()) throw OracleError("chat backend returned an empty message");
    return content;
  } catch (const json::exception &e) {
    throw OracleError(std::string("chat reply not in completion shape: ") + e.what());
  }
}

SemanticDescription StubSemanticOracle::describe(const ApiMetainfo &api) {
  SemanticDescription d;
  d.api = api.name;
  if (!api.doc.empty()) {
    d.summary = first_sentence(api.doc);
  } else {
    std::string sig = api.return_type + " " + api.name + "(";
    for (std::size_t i = 0; i < api.params.size(); ++i) {
      if (i > 0) sig += ", ";
      sig += api.params[i].type;
    }
    sig += ")";
    d.summary = "Undocumented function with signature " + sig + ".";
  }
  std::string lname = to_lower(api.name);
  auto name_has = [&](std::initializer_list<const char *> words) {
    for (const char *w : words) {
      if (lname.find(w) != std::string::npos) return true;
    }
    return false;
  };
  if (name_has({"init", "new", "create", "open", "parse", "from", "alloc"})) {
    d.role = "initializer";
  } else if (name_has({"free", "destroy", "close", "cleanup", "release", "shutdown"})) {
    d.role = "finalizer";
  } else {
    d.role = "transformer";
  }
  std::istringstream lines(api.doc);
  std::string line;
  while (std::getline(lines, line)) {
    std::string l = to_lower(line);
    if (l.find("must") != std::string::npos || l.find("requires") != std::string::npos ||
        l.find("call before") != std::string::npos || l.find("call after") != std::string::npos) {
      d.preconditions.push_back(collapse_ws(line));
    }
  }
  return d;
}

std::vector<SemanticRelation> StubSemanticOracle::relate(
    const std::vector<SemanticDescription> &descs) {
  std::set<std::string> known_lower;
  std::map<std::string, std::string> original_case;
  for (const auto &d : descs) {
    known_lower.insert(to_lower(d.api));
    original_case[to_lower(d.api)] = d.api;
  }
  std::vector<SemanticRelation> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto &d : descs) {
    std::string text = d.summary;
    for (const auto &p : d.preconditions) text += "\n" + p;
    std::string lower = to_lower(text);
    for (const std::string &succ : names_after_keyword(lower, "before ", known_lower)) {
      std::string s = original_case[succ];
      if (s != d.api && seen.insert({d.api, s}).second) {
        out.push_back({d.api, s, "documentation of " + d.api + " orders it before " + s});
      }
    }
    for (const std::string &pred : names_after_keyword(lower, "after ", known_lower)) {
      std::string p = original_case[pred];
      if (p != d.api && seen.insert({p, d.api}).second) {
        out.push_back({p, d.api, "documentation of " + d.api + " orders it after " + p});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const SemanticRelation &a, const SemanticRelation &b) {
    return std::tie(a.predecessor, a.successor) < std::tie(b.predecessor, b.successor);
  });
  return out;
}

namespace {

constexpr const char *kSemanticSystemPrompt =
    R"(You are a C library analyst. Reply with a single JSON object and nothing else.)";

}  // namespace

SemanticDescription ChatSemanticOracle::describe(const ApiMetainfo &api) {
  std::ostringstream user;
  user << "Describe the purpose of this C API.\n"
       << "Name: " << api.name << "\n"
       << "Signature: " << api.return_type << " " << api.name << "(";
  for (std::size_t i = 0; i < api.params.size(); ++i) {
    if (i > 0) user << ", ";
    user << api.params[i].type << " " << api.params[i].name;
  }
  user << ")\n";
  if (!api.doc.empty()) user << "Documentation:\n" << api.doc << "\n";
  if (!api.body.empty()) user << "Body:\n" << api.body << "\n";
  user << R"(Reply as JSON: {"summary": string, "role": string, "preconditions": [string]})";

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply = chat_->complete(kSemanticSystemPrompt, user.str());
    try {
      json j = parse_reply_json(reply);
      SemanticDescription d;
      d.api = api.name;
      d.summary = j.at("summary").get<std::string>();
      d.role = j.at("role").get<std::string>();
      for (const auto &p : j.value("preconditions", json::array())) {
        d.preconditions.push_back(p.get<std::string>());
      }
      return d;
    } catch (const json::exception &) {
      if (attempt == 1) throw OracleError("semantic description reply stayed malformed");
    }
  }
  throw OracleError("unreachable");
}

std::vector<SemanticRelation> ChatSemanticOracle::relate(
    const std::vector<SemanticDescription> &descs) {
  std::ostringstream user;
  user << "Given these C API descriptions, identify ordering relations: which API must be "
          "called before which. Only report pairs you are confident about.\n";
  for (const auto &d : descs) {
    user << "- " << d.api << ": " << d.summary << " (role: " << d.role << ")";
    for (const auto &p : d.preconditions) user << " precondition: " << p << ";";
    user << "\n";
  }
  user << R"(Reply as JSON: {"relations": [{"predecessor": string, "successor": string, "rationale": string}]})";

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply = chat_->complete(kSemanticSystemPrompt, user.str());
    try {
      json j = parse_reply_json(reply);
      std::vector<SemanticRelation> out;
      for (const auto &r : j.at("relations")) {
        out.push_back({r.at("predecessor").get<std::string>(),
                       r.at("successor").get<std::string>(), r.value("rationale", "")});
      }
      return out;
    } catch (const json::exception &) {
      if (attempt == 1) throw OracleError("relation reply stayed malformed");
    }
  }
  throw OracleError("unreachable");
}

CrashVerdict StubAnalysisOracle::classify(const CrashContext &ctx) {
  if (ctx.fault_in_driver) {
    return {CrashVerdict::Kind::kApiMisuse,
            "faulting frame is in driver code, so the harness violated the API contract"};
  }
  std::string doc = to_lower(ctx.faulting_api_doc);
  // Keyword rule: the API documents a precondition whose violation
  // matches the observed crash kind.
  bool doc_forbids_null = doc.find("must not be null") != std::string::npos ||
                          doc.find("must be non-null") != std::string::npos ||
                          doc.find("must not be used after") != std::string::npos;
  if (doc_forbids_null && ctx.sanitizer_kind == "addr-violation") {
    return {CrashVerdict::Kind::kApiMisuse,
            "documentation of " + ctx.faulting_api +
                " states a pointer precondition matching this address violation"};
  }
  return {CrashVerdict::Kind::kLibraryBug,
          "fault inside " + (ctx.faulting_api.empty() ? std::string("library internals")
                                                      : ctx.faulting_api) +
              " with no documented precondition matching the crash"};
}

CrashVerdict ChatAnalysisOracle::classify(const CrashContext &ctx) {
  std::ostringstream user;
  user << "A fuzz driver crashed. Decide whether the driver misused the API or the library "
          "itself is buggy.\n"
       << "Sanitizer kind: " << ctx.sanitizer_kind << "\n"
       << "Faulting API: " << (ctx.faulting_api.empty() ? "(unknown)" : ctx.faulting_api) << "\n";
  if (!ctx.faulting_api_doc.empty()) {
    user << "API documentation:\n" << ctx.faulting_api_doc << "\n";
  }
  user << "Stack:\n" << ctx.stack_text << "\nDriver source:\n" << ctx.driver_source << "\n";
  user << R"(Reply as JSON: {"classification": "api_misuse" | "library_bug", "rationale": string})";

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::string reply = chat_->complete(kSemanticSystemPrompt, user.str());
    try {
      json j = parse_reply_json(reply);
      std::string c = j.at("classification").get<std::string>();
      if (c == "api_misuse" || c == "library_bug") {
        return {c == "api_misuse" ? CrashVerdict::Kind::kApiMisuse
                                  : CrashVerdict::Kind::kLibraryBug,
                j.value("rationale", "")};
      }
    } catch (const json::exception &) {
    }
    if (attempt == 1) throw OracleError("classification reply stayed malformed");
  }
  throw OracleError("unreachable");
}

}  // namespace masfuzz
