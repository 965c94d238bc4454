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

#include "viergo/operators.hpp"
#include "viergo/random.hpp"

namespace viergo {

enum class NoiseKind { kGaussianIsotropic };

// Additive oracle noise Z with E[Z] = 0 and E|Z|^2 = d * sigma^2.
struct NoiseModel {
  NoiseKind kind = NoiseKind::kGaussianIsotropic;
  double sigma = 0.0;

  // Bound on E|Z|^2 in dimension d.
  double SecondMomentBound(int d) const { return d * sigma * sigma; }
};

// Stochastic first-order oracle returning F(x) + Z. Owns two independent
// sub-streams of one chain: the base stream and the look-ahead stream used
// by the second query of an extragradient step.
class StochasticOracle {
 public:
  StochasticOracle(Operator op, NoiseModel noise, const StreamKey& key);

  const Operator& op() const { return op_; }
  const NoiseModel& noise() const { return noise_; }
  int dimension() const { return op_.dimension(); }

  Vector Sample(const Vector& x, StreamPhase phase = StreamPhase::kBase);
  void SampleInto(const Vector& x, Vector& out,
                  StreamPhase phase = StreamPhase::kBase);

  std::uint64_t queries() const { return base_queries_ + lookahead_queries_; }
  std::uint64_t queries(StreamPhase phase) const {
    return phase == StreamPhase::kLookahead ? lookahead_queries_ : base_queries_;
  }

 private:
  Operator op_;
  NoiseModel noise_;
  RandomStream base_;
  RandomStream lookahead_;
  Vector noise_buffer_;
  std::uint64_t base_queries_ = 0;
  std::uint64_t lookahead_queries_ = 0;
};

// Builds one oracle per chain index from a fixed (operator, noise, seed).
// Chains with distinct indices draw from independent streams, so results do
// not depend on how chains are scheduled across threads.
class OracleFactory {
 public:
  OracleFactory(Operator op, NoiseModel noise, std::uint64_t seed)
      : op_(std::move(op)), noise_(noise), seed_(seed) {}

  StochasticOracle Make(std::uint64_t chain) const {
    return StochasticOracle(op_, noise_, StreamKey{seed_, chain, StreamPhase::kBase});
  }

  const Operator& op() const { return op_; }
  const NoiseModel& noise() const { return noise_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Operator op_;
  NoiseModel noise_;
  std::uint64_t seed_;
};

struct NoiseMoments {
  double mean_norm = 0.0;      // |mean of Z|
  double second_moment = 0.0;  // mean of |Z|^2
  double fourth_moment = 0.0;  // mean of |Z|^4
};

// Monte-Carlo moments of the oracle noise at x, using n base-stream queries.
NoiseMoments EmpiricalNoiseMoments(StochasticOracle& oracle, const Vector& x,
                                   int n);

}  // namespace viergo
