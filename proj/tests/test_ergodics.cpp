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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "viergo/ergodics.hpp"
#include "viergo/error.hpp"

using namespace viergo;

namespace {

const NoiseModel kHalf{NoiseKind::kGaussianIsotropic, 0.5};

SolverConfig Scalar(std::int64_t horizon, std::int64_t burn_in, std::int64_t stride) {
  SolverConfig c;
  c.gamma = 0.1;
  c.horizon = horizon;
  c.burn_in = burn_in;
  c.record_stride = stride;
  c.x0 = Vector::Zero(1);
  return c;
}

std::vector<double> Ar1(double rho, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> out(n);
  double y = 0.0;
  for (auto& v : out) v = y = rho * y + z(rng);
  return out;
}

// Long-run variance of the scalar SGDA chain's iterates: the AR(1)
// innovation variance gamma^2 sigma^2 over (1 - (1 - gamma mu))^2.
constexpr double kLongRunVariance = 0.25;

}  // namespace

TEST_CASE("Cesaro mean of squared error is zero on a constant trajectory at the solution") {
  const OracleFactory f(MakeLinear(1, 1), NoiseModel{}, 1);
  const Trajectory t = RunChain(Scalar(100, 0, 1), f, 0);
  CHECK(CesaroMean(t, TestFunction::SquaredError(Vector::Zero(1))) == 0.0);
  CHECK(CesaroMean(t, TestFunction::Coordinate(0)) == 0.0);
}

TEST_CASE("scalar chain: coordinate and squared-error averages") {
  const OracleFactory f(MakeLinear(1, 1), kHalf, 11);
  const Trajectory t = RunChain(Scalar(1000000, 10000, 1000000), f, 0);
  const double n = static_cast<double>(t.count);
  const double mean = CesaroMean(t, TestFunction::Coordinate(0));
  CHECK(std::abs(mean) < 3 * std::sqrt(kLongRunVariance / n));
  const double v = 0.025 / 1.9;
  CHECK(CesaroMean(t, TestFunction::SquaredError(Vector::Zero(1))) == doctest::Approx(v).epsilon(0.03));
  const ErgodicReport r = Analyze(t, TestFunction::Coordinate(0));
  CHECK(r.cesaro == mean);
  CHECK(r.long_run_variance == doctest::Approx(kLongRunVariance).epsilon(0.15));
}

TEST_CASE("Cesaro mean is linear in the test function") {
  const OracleFactory f(MakeLogisticGame().op(), kHalf, 5);
  SolverConfig c = Scalar(20000, 1000, 1);
  c.gamma = 0.05;
  c.x0 = Vector::Zero(2);
  const Trajectory t = RunChain(c, f, 0);
  const auto g1 = TestFunction::Custom("sin0", [](const Vector& x) { return std::sin(x[0]); });
  const auto g2 = TestFunction::Custom("prod", [](const Vector& x) { return x[0] * x[1]; });
  const auto combo = TestFunction::Custom(
      "combo", [](const Vector& x) { return 2.5 * std::sin(x[0]) - 0.75 * x[0] * x[1]; });
  const double lhs = CesaroMean(t, combo);
  const double rhs = 2.5 * CesaroMean(t, g1) - 0.75 * CesaroMean(t, g2);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  // Accumulator path and stored-iterate path agree.
  const auto c0 = TestFunction::Custom("c0", [](const Vector& x) { return x[0]; });
  CHECK(CesaroMean(t, c0) == doctest::Approx(CesaroMean(t, TestFunction::Coordinate(0))).epsilon(1e-12));
}

TEST_CASE("Cesaro mean of an untracked function needs stored iterates") {
  const OracleFactory f(MakeLinear(1, 1), kHalf, 5);
  const Trajectory t = RunChain(Scalar(1000, 10, 7), f, 0);
  const auto g = TestFunction::Custom("cube", [](const Vector& x) { return x[0] * x[0] * x[0]; });
  CHECK_THROWS_AS(CesaroMean(t, g), Error);
  CHECK_THROWS_AS(CesaroMean(t, TestFunction::Coordinate(3)), Error);
}

TEST_CASE("batch means on reference sequences") {
  const std::vector<double> constant(10000, 3.0);
  CHECK(BatchMeansVariance(constant, 100) == 0.0);

  std::mt19937_64 rng(42);
  std::normal_distribution<double> z;
  std::vector<double> iid(1000000);
  for (auto& v : iid) v = z(rng);
  CHECK(BatchMeansVariance(iid, 1000) == doctest::Approx(1.0).epsilon(0.10));

  const auto ar = Ar1(0.9, 1000000, 7);
  CHECK(BatchMeansVariance(ar, DefaultBatchCount(ar.size())) == doctest::Approx(100.0).epsilon(0.15));

  CHECK(DefaultBatchCount(1000000) == 1000);
  CHECK_THROWS_AS(BatchMeansVariance(iid, 1), Error);
  CHECK_THROWS_AS(BatchMeansVariance(std::vector<double>(10, 0.0), 8), Error);
}

TEST_CASE("batch means is invariant to reversing the sequence") {
  auto ar = Ar1(0.5, 40000, 3);
  const double forward = BatchMeansVariance(ar, 200);
  std::reverse(ar.begin(), ar.end());
  CHECK(BatchMeansVariance(ar, 200) == doctest::Approx(forward).epsilon(1e-12));
}

TEST_CASE("replicates of a noise-free chain at the solution are all zero") {
  const OracleFactory f(MakeLinear(1, 1), NoiseModel{}, 1);
  const auto v = CltReplicates(Scalar(50, 0, 1), f, TestFunction::Coordinate(0), 1, 0.0, 1);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == 0.0);
  const auto g = CltReplicates(Scalar(50, 0, 1), f,
                               TestFunction::SquaredError(Vector::Zero(1)), 1, 0.0, 1);
  CHECK(g[0] == 0.0);
}

TEST_CASE("skewness and kurtosis thresholds hold for Gaussian samples of size 2000") {
  // Calibration of the normality thresholds used below.
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s(2000);
    for (auto& v : s) v = z(rng);
    const SampleSummary st = Summarize(s);
    CHECK(std::abs(st.skewness) <= 0.2);
    CHECK(std::abs(st.excess_kurtosis) <= 0.5);
  }
}

TEST_CASE("replicate variance agrees with single-chain batch means") {
  const OracleFactory f(MakeLinear(1, 1), kHalf, 2025);
  const SolverConfig c = Scalar(11000, 1000, 11000);
  const auto reps = CltReplicates(c, f, TestFunction::Coordinate(0), 2000, 0.0, 1);
  const SampleSummary st = Summarize(reps);
  CHECK(std::abs(st.skewness) <= 0.2);
  CHECK(std::abs(st.excess_kurtosis) <= 0.5);

  const OracleFactory lone(MakeLinear(1, 1), kHalf, 999);
  const Trajectory t = RunChain(Scalar(2000000, 10000, 2000000), lone, 0);
  const double sigma2 = Analyze(t, TestFunction::Coordinate(0)).long_run_variance;
  CHECK(st.variance == doctest::Approx(sigma2).epsilon(0.15));
  CHECK(sigma2 == doctest::Approx(kLongRunVariance).epsilon(0.15));
}

TEST_CASE("replicates are order-independent and thread-count independent") {
  const OracleFactory f(MakeLinear(1, 2), kHalf, 8);
  SolverConfig c = Scalar(2000, 100, 2000);
  c.x0 = Vector::Zero(2);
  const auto one = CltReplicates(c, f, TestFunction::Coordinate(1), 64, 0.0, 1);
  const auto four = CltReplicates(c, f, TestFunction::Coordinate(1), 64, 0.0, 4);
  CHECK(one == four);
  auto shuffled = one;
  std::mt19937_64 rng(3);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  const SampleSummary a = Summarize(one), b = Summarize(shuffled);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK(a.skewness == b.skewness);
  CHECK(a.excess_kurtosis == b.excess_kurtosis);
}

TEST_CASE("diverging replicate is reported") {
  const Game g = MakeQuasiBilinear(1e-4);
  const OracleFactory f(g.op(), kHalf, 1);
  SolverConfig c = Scalar(100000, 0, 100000);
  c.x0 = Vector::Ones(2);
  c.gamma = 5.0;
  c.allow_inadmissible = true;
  CHECK_THROWS_AS(CltReplicates(c, f, TestFunction::Coordinate(0), 2, 0.0, 1), Error);
}

TEST_CASE("law of large numbers probe") {
  {
    StochasticOracle o(MakeLinear(1, 1), NoiseModel{}, StreamKey{});
    const std::vector<std::int64_t> cps = {10, 100, 1000};
    const auto pts = LlnProbe(Scalar(1000, 0, 1), o, TestFunction::SquaredError(Vector::Zero(1)), cps);
    for (const auto& p : pts) CHECK(p.cesaro == 0.0);
  }
  // Root-mean-square increments |c(2N) - c(N)| shrink as N grows.
  const OracleFactory f(MakeLinear(1, 1), kHalf, 31);
  const std::vector<std::int64_t> cps = {1000, 2000, 10000, 20000, 100000, 200000};
  std::vector<double> rms(3, 0.0), gap(3, 0.0);
  const double v = 0.025 / 1.9;
  const int chains = 10;
  for (int k = 0; k < chains; ++k) {
    StochasticOracle o = f.Make(k);
    const auto pts = LlnProbe(Scalar(200000, 0, 200000), o, TestFunction::Coordinate(0), cps);
    for (int i = 0; i < 3; ++i) {
      const double d = pts[2 * i + 1].cesaro - pts[2 * i].cesaro;
      rms[i] += d * d / chains;
    }
    StochasticOracle o2 = f.Make(100 + k);
    const auto sq = LlnProbe(Scalar(200000, 0, 200000), o2,
                             TestFunction::SquaredError(Vector::Zero(1)), cps);
    for (int i = 0; i < 3; ++i) gap[i] += std::pow(sq[2 * i + 1].cesaro - v, 2) / chains;
  }
  CHECK(rms[1] < rms[0]);
  CHECK(rms[2] < rms[1]);
  CHECK(gap[2] < gap[1]);

  StochasticOracle o = f.Make(0);
  const std::vector<std::int64_t> bad = {50, 40};
  CHECK_THROWS_AS(LlnProbe(Scalar(100, 0, 1), o, TestFunction::Coordinate(0), bad), Error);
}

TEST_CASE("summary statistics of a known sample") {
  const std::vector<double> s = {1, 2, 3, 4, 10};
  const SampleSummary st = Summarize(s);
  CHECK(st.n == 5);
  CHECK(st.mean == doctest::Approx(4.0));
  CHECK(st.variance == doctest::Approx(12.5));
  // Population-moment skewness: m3 / m2^1.5 with m2 = 10, m3 = 36.
  CHECK(st.skewness == doctest::Approx(36.0 / std::pow(10.0, 1.5)));
}
