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

#include "masfuzz/miner.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "masfuzz/ctoken.hpp"
#include "masfuzz/rng.hpp"
#include "masfuzz/scanner.hpp"

namespace masfuzz {

namespace {

std::string format_id(std::string_view prefix, std::size_t n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04zu", n);
  return std::string(prefix) + "-" + buf;
}

}  // namespace

void assign_sequence_ids(std::vector<ApiSequence> &sequences) {
  std::size_t counts[3] = {0, 0, 0};
  const char *prefixes[3] = {"ue", "mp", "sem"};
  for (auto &s : sequences) {
    std::size_t d = static_cast<std::size_t>(s.dimension);
    s.id = format_id(prefixes[d], ++counts[d]);
  }
}

std::vector<ApiSequence> mine_usage_sequences(const LibraryModel &model) {
  std::vector<ApiSequence> out;
  std::set<std::vector<std::string>> seen;
  std::set<std::string> public_names;
  for (const auto &api : model.apis) public_names.insert(api.name);

  for (const std::string &rel : model.usage_files) {
    std::ifstream in(std::filesystem::path(model.root) / rel, std::ios::binary);
    if (!in) continue;  // diagnostics only, never fatal
    std::ostringstream ss;
    ss << in.rdbuf();
    ParsedSource parsed;
    try {
      parsed = parse_source(ss.str());
    } catch (...) {
      continue;
    }
    for (const ParsedFunction &fn : parsed.functions) {
      if (!fn.is_definition || fn.body.empty()) continue;
      std::vector<CToken> toks = tokenize_c(fn.body);
      std::vector<std::string> calls;
      for (std::size_t idx : call_expression_heads(toks)) {
        const std::string &name = toks[idx].text;
        if (public_names.count(name)) calls.push_back(name);
      }
      if (calls.size() < 2) continue;
      if (!seen.insert(calls).second) continue;
      ApiSequence seq;
      seq.apis = std::move(calls);
      seq.dimension = Dimension::kUe;
      seq.provenance = rel + ":" + fn.name + ":" + std::to_string(fn.line);
      out.push_back(std::move(seq));
    }
  }
  return out;
}

std::vector<std::vector<std::string>> enumerate_mp_paths(const CompatibilityGraph &g,
                                                         const std::vector<std::string> &starts,
                                                         int max_len) {
  std::vector<std::vector<std::string>> paths;
  std::vector<std::string> stack;
  std::set<std::string> on_path;

  // Iterative DFS would obscure the prefix-recording rule; recursion
  // depth is bounded by max_len.
  struct Walker {
    const CompatibilityGraph &g;
    int max_len;
    std::vector<std::vector<std::string>> &paths;
    std::vector<std::string> &stack;
    std::set<std::string> &on_path;

    void visit(const std::string &node) {
      stack.push_back(node);
      on_path.insert(node);
      paths.push_back(stack);
      if (static_cast<int>(stack.size()) < max_len) {
        auto it = g.edges.find(node);
        if (it != g.edges.end()) {
          for (const std::string &next : it->second) {
            if (on_path.count(next) || g.unresolved.count(next)) continue;
            visit(next);
          }
        }
      }
      on_path.erase(node);
      stack.pop_back();
    }
  } walker{g, max_len, paths, stack, on_path};

  for (const std::string &s : starts) {
    if (g.unresolved.count(s)) continue;
    walker.visit(s);
  }
  return paths;
}

std::vector<ApiSequence> mine_mp_sequences(const CompatibilityGraph &g, const MinerConfig &cfg) {
  std::vector<ApiSequence> out;
  if (g.nodes.empty()) return out;

  std::vector<std::string> starts = g.zero_indegree();
  if (starts.empty()) {
    for (const auto &n : g.nodes) {
      if (!g.unresolved.count(n)) starts.push_back(n);
    }
  }

  for (const std::string &start : starts) {
    std::vector<std::vector<std::string>> paths = enumerate_mp_paths(g, {start}, cfg.max_len);
    std::vector<std::size_t> chosen;
    if (static_cast<int>(paths.size()) <= cfg.mp_sample_size) {
      for (std::size_t i = 0; i < paths.size(); ++i) chosen.push_back(i);
    } else {
      // Sample stream derived per start node so adding a start does not
      // perturb the others' picks.
      Rng rng = Rng::derive(cfg.rng_seed, "mp-sample:" + start);
      chosen = rng.sample_without_replacement(paths.size(),
                                              static_cast<std::size_t>(cfg.mp_sample_size));
      std::sort(chosen.begin(), chosen.end());
    }
    for (std::size_t idx : chosen) {
      ApiSequence seq;
      seq.apis = paths[idx];
      seq.dimension = Dimension::kMp;
      std::string prov = "path:";
      for (std::size_t k = 0; k < seq.apis.size(); ++k) {
        if (k > 0) prov += "->";
        prov += seq.apis[k];
      }
      seq.provenance = prov;
      out.push_back(std::move(seq));
    }
  }
  return out;
}

}  // namespace masfuzz
