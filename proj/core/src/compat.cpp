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

#include "masfuzz/compat.hpp"

#include <algorithm>

#include "masfuzz/error.hpp"

namespace masfuzz {

namespace {

bool normalize_quiet(const std::string &spelling, NormalizedType *out) {
  try {
    *out = normalize_type(spelling);
    return true;
  } catch (const TypeNormalizationError &) {
    return false;
  }
}

bool types_flow(const NormalizedType &ret, const NormalizedType &param) {
  if (ret.base != param.base) return false;
  if (ret.pointer_depth == param.pointer_depth) return true;
  int lo = std::min(ret.pointer_depth, param.pointer_depth);
  int hi = std::max(ret.pointer_depth, param.pointer_depth);
  return lo == 0 && hi == 1;
}

}  // namespace

bool compatible(const ApiMetainfo &a, const ApiMetainfo &b) {
  if (a.needs_oracle || b.needs_oracle) return false;
  NormalizedType ret;
  if (!normalize_quiet(a.return_type, &ret)) return false;
  if (ret.base == "void" && ret.pointer_depth == 0) return false;
  if (ret.is_primitive) return false;
  // void * propagates to anything only nominally; the paper's predicate
  // keys on struct identity, so a bare void pointer does not count.
  if (ret.base == "void") return false;
  for (const ApiParam &p : b.params) {
    NormalizedType pt;
    if (!normalize_quiet(p.type, &pt)) continue;
    if (pt.is_primitive) continue;
    if (types_flow(ret, pt)) return true;
  }
  return false;
}

bool CompatibilityGraph::has_edge(std::string_view from, std::string_view to) const {
  auto it = edges.find(std::string(from));
  if (it == edges.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), std::string(to));
}

std::vector<std::string> CompatibilityGraph::zero_indegree() const {
  std::set<std::string> has_incoming;
  for (const auto &[from, tos] : edges) {
    for (const auto &to : tos) has_incoming.insert(to);
  }
  std::vector<std::string> out;
  for (const auto &n : nodes) {
    if (!has_incoming.count(n) && !unresolved.count(n)) out.push_back(n);
  }
  return out;
}

CompatibilityGraph build_compat_graph(const LibraryModel &model) {
  CompatibilityGraph g;
  for (const auto &api : model.apis) {
    g.nodes.push_back(api.name);
    if (api.needs_oracle) g.unresolved.insert(api.name);
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  for (const auto &a : model.apis) {
    std::vector<std::string> tos;
    for (const auto &b : model.apis) {
      if (compatible(a, b)) tos.push_back(b.name);
    }
    std::sort(tos.begin(), tos.end());
    if (!tos.empty()) g.edges[a.name] = std::move(tos);
  }
  return g;
}

}  // namespace masfuzz
