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

#include "masfuzz/model.hpp"

#include <algorithm>

#include "masfuzz/error.hpp"

namespace masfuzz {

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::kUe:
      return "UE";
    case Dimension::kMp:
      return "MP";
    case Dimension::kSem:
      return "SEM";
  }
  return "UE";
}

Dimension dimension_from_name(std::string_view name) {
  if (name == "UE") return Dimension::kUe;
  if (name == "MP") return Dimension::kMp;
  if (name == "SEM") return Dimension::kSem;
  throw FormatError("unknown dimension tag: " + std::string(name));
}

const ApiMetainfo *LibraryModel::find(std::string_view name) const {
  for (const auto &api : apis) {
    if (api.name == name) return &api;
  }
  return nullptr;
}

bool LibraryModel::contains(std::string_view name) const { return find(name) != nullptr; }

ApiSequence *SequencePool::find(std::string_view id) {
  for (auto &s : sequences) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const ApiSequence *SequencePool::find(std::string_view id) const {
  for (const auto &s : sequences) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

int SequencePool::potential(std::string_view api) const {
  int n = 0;
  for (const auto &s : sequences) {
    if (std::find(s.apis.begin(), s.apis.end(), api) != s.apis.end()) ++n;
  }
  return n;
}

namespace {

// Maximal length first, then lexicographically smaller api list. Keeps
// selection deterministic regardless of pool order.
bool better_candidate(const ApiSequence &challenger, const ApiSequence *incumbent) {
  if (incumbent == nullptr) return true;
  if (challenger.apis.size() != incumbent->apis.size()) {
    return challenger.apis.size() > incumbent->apis.size();
  }
  return challenger.apis < incumbent->apis;
}

}  // namespace

const ApiSequence *SequencePool::longest_unused(std::string_view api, Dimension dim) const {
  const ApiSequence *best = nullptr;
  for (const auto &s : sequences) {
    if (s.used || s.dimension != dim) continue;
    if (std::find(s.apis.begin(), s.apis.end(), api) == s.apis.end()) continue;
    if (better_candidate(s, best)) best = &s;
  }
  return best;
}

const ApiSequence *SequencePool::longest_unused_any(std::string_view api) const {
  const ApiSequence *best = nullptr;
  for (const auto &s : sequences) {
    if (s.used) continue;
    if (std::find(s.apis.begin(), s.apis.end(), api) == s.apis.end()) continue;
    if (better_candidate(s, best)) best = &s;
  }
  return best;
}

}  // namespace masfuzz
