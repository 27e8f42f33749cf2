// Copyright 2026 The fastmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Seeding conventions shared by every generator in the library.
//
// All randomness comes from std::mt19937_64, whose output sequence is fixed
// by the C++ standard. A trial's seed is base_seed + trial_index; distinct
// uses inside one trial (signal bits, planted position, noise) draw from
// independent sub-streams obtained by mixing that seed with a stream id.

#include <cstdint>
#include <random>

namespace fastmatch {

enum class Stream : std::uint64_t {
  kSignal = 0,
  kPosition = 1,
  kNoise = 2,
  kTemplate = 3,
  kAuxiliary = 4,
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t base_seed,
                                   std::uint64_t trial_index) noexcept {
  return base_seed + trial_index;
}

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream stream) noexcept {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(stream) + 1));
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, Stream stream) {
  return Engine(stream_seed(seed, stream));
}

// Uniform index in [0, n) from one raw draw. The modulo bias is below
// n / 2^64, negligible for any signal that fits in memory.
inline std::uint64_t uniform_index(Engine& engine, std::uint64_t n) {
  return engine() % n;
}

}  // namespace fastmatch
