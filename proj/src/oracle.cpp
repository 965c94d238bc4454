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

#include "viergo/oracle.hpp"

#include <utility>

#include "viergo/error.hpp"

namespace viergo {

StochasticOracle::StochasticOracle(Operator op, NoiseModel noise,
                                   const StreamKey& key)
    : op_(std::move(op)),
      noise_(noise),
      base_(key.WithPhase(StreamPhase::kBase)),
      lookahead_(key.WithPhase(StreamPhase::kLookahead)),
      noise_buffer_(op_.dimension()) {
  if (!(noise_.sigma >= 0.0)) Fail(ErrorCode::kInput, "noise sigma must be >= 0");
}

Vector StochasticOracle::Sample(const Vector& x, StreamPhase phase) {
  Vector out(op_.dimension());
  SampleInto(x, out, phase);
  return out;
}

void StochasticOracle::SampleInto(const Vector& x, Vector& out,
                                  StreamPhase phase) {
  op_.EvaluateInto(x, out);
  RandomStream& stream = phase == StreamPhase::kLookahead ? lookahead_ : base_;
  (phase == StreamPhase::kLookahead ? lookahead_queries_ : base_queries_) += 1;
  if (noise_.sigma == 0.0) return;
  stream.FillGaussian(noise_buffer_, noise_.sigma);
  out += noise_buffer_;
}

NoiseMoments EmpiricalNoiseMoments(StochasticOracle& oracle, const Vector& x,
                                   int n) {
  if (n < 2) Fail(ErrorCode::kPrecondition, "empirical_noise_moments needs n >= 2");
  const Vector fx = oracle.op().Evaluate(x);
  Vector sum = Vector::Zero(oracle.dimension());
  Vector sample(oracle.dimension());
  double m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    oracle.SampleInto(x, sample);
    sample -= fx;
    sum += sample;
    const double sq = sample.squaredNorm();
    m2 += sq;
    m4 += sq * sq;
  }
  NoiseMoments out;
  out.mean_norm = sum.norm() / n;
  out.second_moment = m2 / n;
  out.fourth_moment = m4 / n;
  return out;
}

}  // namespace viergo
