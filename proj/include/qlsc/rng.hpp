// Copyright 2026 The qlsc authors
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
#include <random>

namespace qlsc {

/// splitmix64 finalizer; used to derive statistically independent streams
/// from a base seed without sharing generator state between call sites.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-subtask seed: base seed XOR a hash of the subtask index, so results
/// do not depend on evaluation order or thread count.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return base ^ splitmix64(index + 1);
}

/// Uniform double in [0, 1) with 53 random bits. Hand-rolled instead of
/// std::uniform_real_distribution so the stream is pinned to the engine
/// output alone.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qlsc
