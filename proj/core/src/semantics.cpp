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

#include "masfuzz/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "masfuzz/error.hpp"

namespace masfuzz {

SemanticDescription extract_semantics(const ApiMetainfo &api, SemanticOracle &oracle) {
  try {
    return oracle.describe(api);
  } catch (const OracleError &) {
    SemanticDescription d;
    d.api = api.name;
    d.available = false;
    return d;
  }
}

std::vector<SemanticRelation> infer_relations(const std::vector<SemanticDescription> &descs,
                                              SemanticOracle &oracle) {
  std::vector<SemanticDescription> usable;
  std::set<std::string> known;
  for (const auto &d : descs) {
    if (!d.available) continue;
    usable.push_back(d);
    known.insert(d.api);
  }
  if (usable.size() < 2) return {};

  std::vector<SemanticRelation> raw;
  try {
    raw = oracle.relate(usable);
  } catch (const OracleError &) {
    return {};
  }
  std::vector<SemanticRelation> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (auto &r : raw) {
    if (r.predecessor == r.successor) continue;
    if (!known.count(r.predecessor) || !known.count(r.successor)) continue;
    if (!seen.insert({r.predecessor, r.successor}).second) continue;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

using EdgeSet = std::set<std::pair<std::string, std::string>>;

// Finds one cycle deterministically (nodes and adjacency visited in
// sorted order); returns its edges, empty when the graph is acyclic.
std::vector<std::pair<std::string, std::string>> find_cycle(
    const std::map<std::string, std::vector<std::string>> &adj) {
  enum class Color { kWhite, kGray, kBlack };
  std::map<std::string, Color> color;
  for (const auto &[n, _] : adj) color[n] = Color::kWhite;

  std::vector<std::string> stack;
  std::vector<std::pair<std::string, std::string>> cycle;

  struct Dfs {
    const std::map<std::string, std::vector<std::string>> &adj;
    std::map<std::string, Color> &color;
    std::vector<std::string> &stack;
    std::vector<std::pair<std::string, std::string>> &cycle;

    bool visit(const std::string &node) {
      color[node] = Color::kGray;
      stack.push_back(node);
      auto it = adj.find(node);
      if (it != adj.end()) {
        for (const std::string &next : it->second) {
          if (!cycle.empty()) return true;
          auto c = color.find(next);
          if (c == color.end() || c->second == Color::kBlack) continue;
          if (c->second == Color::kGray) {
            auto from = std::find(stack.begin(), stack.end(), next);
            for (auto p = from; p != stack.end(); ++p) {
              auto q = std::next(p);
              cycle.emplace_back(*p, q == stack.end() ? next : *q);
            }
            return true;
          }
          if (visit(next)) return true;
        }
      }
      color[node] = Color::kBlack;
      stack.pop_back();
      return false;
    }
  } dfs{adj, color, stack, cycle};

  for (const auto &[node, _] : adj) {
    if (color[node] == Color::kWhite) {
      if (dfs.visit(node)) break;
    }
  }
  return cycle;
}

}  // namespace

std::vector<ApiSequence> synthesize_sem_sequences(const std::vector<SemanticRelation> &relations,
                                                  const MinerConfig &cfg) {
  EdgeSet edges;
  for (const auto &r : relations) edges.insert({r.predecessor, r.successor});

  auto rebuild_adj = [&]() {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto &[from, to] : edges) {
      adj[from].push_back(to);
      adj.try_emplace(to);
    }
    for (auto &[_, tos] : adj) std::sort(tos.begin(), tos.end());
    return adj;
  };

  std::map<std::string, std::vector<std::string>> adj = rebuild_adj();
  for (;;) {
    auto cycle = find_cycle(adj);
    if (cycle.empty()) break;
    auto worst = *std::max_element(cycle.begin(), cycle.end());
    edges.erase(worst);
    adj = rebuild_adj();
  }

  std::set<std::string> has_incoming;
  for (const auto &[_, to] : edges) has_incoming.insert(to);

  std::vector<ApiSequence> out;
  std::set<std::vector<std::string>> seen;

  struct Walker {
    const std::map<std::string, std::vector<std::string>> &adj;
    int max_len;
    std::vector<std::string> path;
    std::vector<ApiSequence> &out;
    std::set<std::vector<std::string>> &seen;

    void visit(const std::string &node) {
      path.push_back(node);
      auto it = adj.find(node);
      bool at_leaf = it == adj.end() || it->second.empty();
      if (at_leaf || static_cast<int>(path.size()) >= max_len) {
        emit();
      } else {
        for (const std::string &next : it->second) visit(next);
      }
      path.pop_back();
    }

    void emit() {
      if (path.size() < 2 || !seen.insert(path).second) return;
      ApiSequence seq;
      seq.apis = path;
      seq.dimension = Dimension::kSem;
      std::string prov = "relations:";
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (i > 0) prov += "->";
        prov += path[i];
      }
      seq.provenance = prov;
      out.push_back(std::move(seq));
    }
  } walker{adj, cfg.max_len, {}, out, seen};

  for (const auto &[node, _] : adj) {
    if (!has_incoming.count(node)) walker.visit(node);
  }
  return out;
}

std::vector<ApiSequence> mine_sem_sequences(const LibraryModel &model, SemanticOracle &oracle,
                                            const MinerConfig &cfg) {
  std::vector<SemanticDescription> descs;
  for (const auto &api : model.apis) descs.push_back(extract_semantics(api, oracle));

  std::vector<SemanticRelation> relations;
  for (std::size_t start = 0; start < descs.size();
       start += static_cast<std::size_t>(cfg.sem_batch_size)) {
    std::size_t end = std::min(descs.size(), start + static_cast<std::size_t>(cfg.sem_batch_size));
    std::vector<SemanticDescription> batch(descs.begin() + start, descs.begin() + end);
    for (auto &r : infer_relations(batch, oracle)) relations.push_back(std::move(r));
  }
  return synthesize_sem_sequences(relations, cfg);
}

}  // namespace masfuzz
