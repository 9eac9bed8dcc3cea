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

#ifndef MASFUZZ_RNG_HPP_
#define MASFUZZ_RNG_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

namespace masfuzz {

// Deterministic PRNG (splitmix64). Campaign replay requires identical
// streams across platforms, so the stdlib distributions (which are
// implementation-defined) are avoided on purpose.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, n). n must be > 0.
  uint64_t below(uint64_t n) {
    const uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  double unit() { return double(next() >> 11) * 0x1.0p-53; }

  // k distinct indices from [0, n), in draw order.
  std::vector<size_t> sample_without_replacement(size_t n, size_t k);

  // Derive an independent stream for a named purpose from a master seed.
  static Rng derive(uint64_t master_seed, std::string_view purpose);

 private:
  uint64_t state_;
};

}  // namespace masfuzz

#endif  // MASFUZZ_RNG_HPP_
