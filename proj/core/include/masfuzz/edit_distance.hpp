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

#ifndef MASFUZZ_EDIT_DISTANCE_HPP_
#define MASFUZZ_EDIT_DISTANCE_HPP_

#include <string>
#include <vector>

#include "masfuzz/model.hpp"

namespace masfuzz {

/// Per-dimension costs for the sequence edit distance. Raw weights are
/// normalized to mean 1 before use so that uniform inputs of any scale
/// reproduce the classical unit-cost distance.
struct DimensionWeights {
  double ue = 1.0;
  double mp = 1.0;
  double sem = 1.0;

  double raw(Dimension d) const;
  double normalized(Dimension d) const;
};

/// An API name carrying the dimension that contributed it to the
/// sequence; the tag selects the edit cost of the token.
struct TaggedToken {
  std::string name;
  Dimension tag = Dimension::kUe;
};

using TaggedSequence = std::vector<TaggedToken>;

/// Weighted Levenshtein distance over API-name tokens. Insert and delete
/// cost the (normalized) weight of the token's own dimension; a
/// substitution of two differently named tokens costs the larger of
/// their weights; equal names match for free.
double weighted_edit_distance(const TaggedSequence &a, const TaggedSequence &b,
                              const DimensionWeights &weights);

TaggedSequence tag_uniform(const std::vector<std::string> &apis, Dimension tag);

}  // namespace masfuzz

#endif  // MASFUZZ_EDIT_DISTANCE_HPP_
