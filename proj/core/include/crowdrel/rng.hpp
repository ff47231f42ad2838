// Copyright 2026 The crowdrel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CROWDREL_RNG_HPP_
#define CROWDREL_RNG_HPP_

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

// Counter-based deterministic randomness. Standard-library distributions are
// implementation-defined, so every draw here is specified down to the bit:
// the same (seed, tag, indices) tuple produces the same values on any
// platform, in any iteration order, at any thread count.

namespace crowdrel::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t Mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t Combine(std::uint64_t a, std::uint64_t b) {
  return Mix(a ^ (b + kGolden + (a << 6) + (a >> 2)));
}

constexpr std::uint64_t HashString(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a offset basis
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// splitmix64 sequence over an incrementing counter.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t NextU64() {
    state_ += kGolden;
    return Mix(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double NextUnit() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n) without modulo bias; n must be positive.
  std::uint64_t NextBelow(std::uint64_t n) {
    // Values below 2^64 mod n are rejected; what remains is a contiguous
    // range whose length is a multiple of n.
    std::uint64_t min = (0 - n) % n;
    std::uint64_t v = NextU64();
    while (v < min) v = NextU64();
    return v % n;
  }

  // Fisher-Yates; every permutation equally likely.
  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(NextBelow(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Independent stream for one logical cell of the computation. Deriving the
// state from (seed, tag, i, j) rather than from a shared sequential generator
// keeps draws independent of evaluation order.
inline Stream CellStream(std::uint64_t seed, std::string_view tag,
                         std::uint64_t i = 0, std::uint64_t j = 0) {
  std::uint64_t h = Combine(seed, HashString(tag));
  h = Combine(h, i);
  h = Combine(h, j);
  return Stream(h);
}

}  // namespace crowdrel::rng

#endif  // CROWDREL_RNG_HPP_
