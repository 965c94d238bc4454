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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "viergo/error.hpp"
#include "viergo/oracle.hpp"

using namespace viergo;

namespace {

double Correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) { ma += a[i]; mb += b[i]; }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> Draws(StochasticOracle& oracle, int n, StreamPhase phase) {
  std::vector<double> out;
  const Vector x = Vector::Zero(1);
  for (int i = 0; i < n; ++i) out.push_back(oracle.Sample(x, phase)[0]);
  return out;
}

}  // namespace

TEST_CASE("noise-free oracle returns the exact operator value without draws") {
  const Operator op = MakeLogisticGame().op();
  StochasticOracle oracle(op, NoiseModel{NoiseKind::kGaussianIsotropic, 0.0}, StreamKey{1, 0});
  Vector x(2);
  x << 0.7, -1.3;
  CHECK(oracle.Sample(x) == op.Evaluate(x));
  CHECK(oracle.Sample(x, StreamPhase::kLookahead) == op.Evaluate(x));
  const NoiseMoments m = EmpiricalNoiseMoments(oracle, x, 100);
  CHECK(m.mean_norm == 0.0);
  CHECK(m.second_moment == 0.0);
  CHECK(m.fourth_moment == 0.0);
}

TEST_CASE("same key and query sequence give identical samples") {
  const Operator op = MakeLinear(1.0, 3);
  const NoiseModel noise{NoiseKind::kGaussianIsotropic, 0.5};
  StochasticOracle a(op, noise, StreamKey{9, 4});
  StochasticOracle b(op, noise, StreamKey{9, 4});
  StochasticOracle c(op, noise, StreamKey{9, 5});
  const Vector x = Vector::Ones(3);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    const StreamPhase phase = i % 3 == 0 ? StreamPhase::kLookahead : StreamPhase::kBase;
    const Vector sa = a.Sample(x, phase);
    CHECK(sa == b.Sample(x, phase));
    differs = differs || sa != c.Sample(x, phase);
  }
  CHECK(differs);
}

TEST_CASE("Gaussian noise moments match the closed forms") {
  StochasticOracle oracle(MakeLinear(1.0, 1), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5},
                          StreamKey{2024, 0});
  const NoiseMoments m = EmpiricalNoiseMoments(oracle, Vector::Zero(1), 1000000);
  CHECK(m.second_moment == doctest::Approx(0.25).epsilon(0.01));
  CHECK(m.fourth_moment == doctest::Approx(3 * 0.25 * 0.25).epsilon(0.03));
  CHECK(m.mean_norm < 3 * 0.5 / std::sqrt(1e6));
  CHECK(NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}.SecondMomentBound(4) == 1.0);
}

TEST_CASE("moment estimator needs at least two samples") {
  StochasticOracle oracle(MakeLinear(1.0, 1), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5},
                          StreamKey{1, 0});
  CHECK_THROWS_AS(EmpiricalNoiseMoments(oracle, Vector::Zero(1), 1), Error);
}

TEST_CASE("streams of distinct chains are uncorrelated") {
  const OracleFactory factory(MakeLinear(1.0, 1), NoiseModel{NoiseKind::kGaussianIsotropic, 1.0}, 77);
  std::vector<std::vector<double>> streams;
  for (std::uint64_t chain = 0; chain < 6; ++chain) {
    StochasticOracle o = factory.Make(chain);
    streams.push_back(Draws(o, 10000, StreamPhase::kBase));
  }
  for (std::size_t i = 0; i < streams.size(); ++i) {
    for (std::size_t j = i + 1; j < streams.size(); ++j) {
      CHECK(std::abs(Correlation(streams[i], streams[j])) < 0.05);
    }
  }
}

TEST_CASE("look-ahead draws come from a separate sub-stream") {
  const OracleFactory factory(MakeLinear(1.0, 1), NoiseModel{NoiseKind::kGaussianIsotropic, 1.0}, 3);
  StochasticOracle o = factory.Make(0);
  std::vector<double> base, ahead;
  for (int i = 0; i < 10000; ++i) {
    base.push_back(o.Sample(Vector::Zero(1), StreamPhase::kBase)[0]);
    ahead.push_back(o.Sample(Vector::Zero(1), StreamPhase::kLookahead)[0]);
  }
  CHECK(std::abs(Correlation(base, ahead)) < 0.05);
  CHECK(base != ahead);
  // The base stream is unaffected by interleaved look-ahead queries.
  StochasticOracle solo = factory.Make(0);
  CHECK(Draws(solo, 10000, StreamPhase::kBase) == base);
  CHECK(o.queries(StreamPhase::kBase) == 10000);
  CHECK(o.queries(StreamPhase::kLookahead) == 10000);
  CHECK(o.queries() == 20000);
}

TEST_CASE("oracle rejects points of the wrong dimension") {
  StochasticOracle o(MakeLinear(1.0, 2), NoiseModel{NoiseKind::kGaussianIsotropic, 0.1}, StreamKey{});
  CHECK_THROWS_AS(o.Sample(Vector::Zero(3)), Error);
}
