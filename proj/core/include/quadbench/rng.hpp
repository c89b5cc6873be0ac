// Copyright 2026 The Quadbench Authors
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

// Seed derivation. Every random stream in a run is derived from the single
// user seed as derive_seed(seed, stream, index) so that results do not
// depend on evaluation order or thread scheduling.

#ifndef QUADBENCH_RNG_HPP_
#define QUADBENCH_RNG_HPP_

#include <cstdint>

namespace quadbench {

enum class SeedStream : std::uint64_t {
  kTrial = 1,      // index = trial number
  kCandidate = 2,  // index = candidate number within a tuning run
  kSampler = 3,    // optimizer proposal sampling
  kImuNoise = 4,   // index = episode seed
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream))) + index);
}

}  // namespace quadbench

#endif  // QUADBENCH_RNG_HPP_
