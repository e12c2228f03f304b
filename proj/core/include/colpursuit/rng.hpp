// Copyright 2026 The colpursuit Authors
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

#ifndef COLPURSUIT_RNG_HPP_
#define COLPURSUIT_RNG_HPP_

#include <cstdint>
#include <random>

#include "colpursuit/types.hpp"

namespace colpursuit {

// Named substreams derived from one user seed. Each stream id yields an
// independent engine so that L, S and C draws never share state.
enum class Stream : std::uint64_t {
  kLowRank = 1,
  kSparseSupport = 2,
  kSparseValues = 3,
  kOutliers = 4,
  kRowSketch = 5,
  kColumnSketch = 6,
  kTrials = 7,
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed for substream `stream` (and optional counter, e.g. trial index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter = 0);

inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream,
                                 std::uint64_t counter = 0) {
  return derive_seed(seed, static_cast<std::uint64_t>(stream), counter);
}

using Engine = std::mt19937_64;

Matrix standard_normal(Index rows, Index cols, Engine& engine);

// `count` distinct indices from [0, n), uniformly without replacement,
// returned in ascending order.
IndexList sample_without_replacement(Index n, Index count, Engine& engine);

// `count` indices from [0, n) drawn with replacement, in draw order.
IndexList sample_with_replacement(Index n, Index count, Engine& engine);

}  // namespace colpursuit

#endif  // COLPURSUIT_RNG_HPP_
