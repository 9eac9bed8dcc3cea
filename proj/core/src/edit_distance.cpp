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

#include "masfuzz/edit_distance.hpp"

#include <algorithm>

namespace masfuzz {

double DimensionWeights::raw(Dimension d) const {
  switch (d) {
    case Dimension::kUe:
      return ue;
    case Dimension::kMp:
      return mp;
    case Dimension::kSem:
      return sem;
  }
  return 1.0;
}

double DimensionWeights::normalized(Dimension d) const {
  double sum = ue + mp + sem;
  if (sum <= 0.0) return 1.0;
  return 3.0 * raw(d) / sum;
}

double weighted_edit_distance(const TaggedSequence &a, const TaggedSequence &b,
                              const DimensionWeights &weights) {
  const std::size_t n = a.size(), m = b.size();
  // dp[j] holds the distance between a[0..i) and b[0..j); one row kept.
  std::vector<double> dp(m + 1, 0.0);
  for (std::size_t j = 1; j <= m; ++j) {
    dp[j] = dp[j - 1] + weights.normalized(b[j - 1].tag);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    double diag = dp[0];
    dp[0] += weights.normalized(a[i - 1].tag);
    for (std::size_t j = 1; j <= m; ++j) {
      double up = dp[j];
      double del = dp[j] + weights.normalized(a[i - 1].tag);
      double ins = dp[j - 1] + weights.normalized(b[j - 1].tag);
      double sub = diag;
      if (a[i - 1].name != b[j - 1].name) {
        sub += std::max(weights.normalized(a[i - 1].tag), weights.normalized(b[j - 1].tag));
      }
      dp[j] = std::min({del, ins, sub});
      diag = up;
    }
  }
  return dp[m];
}

TaggedSequence tag_uniform(const std::vector<std::string> &apis, Dimension tag) {
  TaggedSequence out;
  out.reserve(apis.size());
  for (const auto &name : apis) out.push_back({name, tag});
  return out;
}

}  // namespace masfuzz
