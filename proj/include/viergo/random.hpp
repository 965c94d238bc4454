// Copyright 2026 The viergo Authors
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

#include "viergo/types.hpp"

namespace viergo {

// SplitMix64 output function. Used only to derive well-separated seeds for
// sub-streams, never as a stream generator itself.
std::uint64_t Mix64(std::uint64_t z);

// Role of a sub-stream inside one chain. SEG draws its look-ahead noise from
// a separate sub-stream so that the two queries of a step never share a
// stream position.
enum class StreamPhase : std::uint64_t {
  kBase = 0,
  kLookahead = 1,
  kAuxiliary = 2,
};

// Identifies a sub-stream by (experiment seed, chain index, phase).
// Distinct keys give independent streams; equal keys give identical ones.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t chain = 0;
  StreamPhase phase = StreamPhase::kBase;

  std::uint64_t Derive() const;
  StreamKey WithPhase(StreamPhase p) const { return {seed, chain, p}; }
};

class RandomStream {
 public:
  explicit RandomStream(const StreamKey& key);
  explicit RandomStream(std::uint64_t raw_seed);

  double Gaussian() { return normal_(engine_); }
  double Uniform() { return uniform_(engine_); }
  // Overwrites `out` with i.i.d. N(0, sigma^2) draws.
  void FillGaussian(Vector& out, double sigma);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace viergo
