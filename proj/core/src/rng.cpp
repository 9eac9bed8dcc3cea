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

#include "masfuzz/rng.hpp"

#include <numeric>

namespace masfuzz {

std::vector<size_t> Rng::sample_without_replacement(size_t n, size_t k) {
  std::vector<size_t> pool(n);
  std::iota(pool.begin(), pool.end(), size_t{0});
  if (k > n) k = n;
  // Partial Fisher-Yates: the first k slots become the sample.
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + size_t(below(uint64_t(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

Rng Rng::derive(uint64_t master_seed, std::string_view purpose) {
  // FNV-1a over the purpose tag, folded into the master seed.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : purpose) {
    h ^= uint64_t(uint8_t(c));
    h *= 0x100000001b3ULL;
  }
  Rng mix(master_seed ^ h);
  return Rng(mix.next());
}

}  // namespace masfuzz
