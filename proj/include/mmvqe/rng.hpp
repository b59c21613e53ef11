// Copyright 2026 The mmvqe Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>

namespace mmvqe {

/// SplitMix64 finalizer (Steele, Lea and Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Folds a tuple of integers into one 64-bit stream key.
constexpr std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6A09E667F3BCC908ULL;
  for (std::uint64_t p : parts) h = splitmix64_mix(h ^ splitmix64_mix(p + 0x9E3779B97F4A7C15ULL));
  return h;
}

/// SplitMix64 generator. Output j of the stream keyed by k is
/// mix(k + (j+1) * 0x9E3779B97F4A7C15), so any position can be computed
/// directly from (key, counter).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit SplitMix64(std::uint64_t key) : state_(key) {}

  constexpr std::uint64_t operator()() {
    state_ += kGamma;
    return splitmix64_mix(state_);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// +1 or -1 with equal probability.
  constexpr int sign() { return ((*this)() >> 63) ? 1 : -1; }

 private:
  std::uint64_t state_;
};

}  // namespace mmvqe
