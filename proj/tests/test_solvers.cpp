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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "viergo/error.hpp"
#include "viergo/oracle.hpp"
#include "viergo/solvers.hpp"

using namespace viergo;

namespace {

const NoiseModel kNoNoise{NoiseKind::kGaussianIsotropic, 0.0};

Vector Vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

OperatorParams Params(double mu, double lambda, std::optional<double> lip,
                      std::optional<double> growth, double radius = 0.0) {
  OperatorParams p;
  p.mu = mu;
  p.lambda = lambda;
  p.lipschitz = lip;
  p.growth = growth;
  p.radius_bound = radius;
  return p;
}

SolverConfig Linear(Algorithm alg, double gamma, std::int64_t horizon, std::int64_t burn_in) {
  SolverConfig c;
  c.algorithm = alg;
  c.gamma = gamma;
  c.alpha = 0.5;
  c.horizon = horizon;
  c.burn_in = burn_in;
  c.record_stride = horizon;
  c.x0 = Vector::Zero(1);
  return c;
}

double PostBurnInVariance(const Trajectory& t) {
  const auto s = t.PostBurnInSqErr();
  double sum = 0.0;
  for (double v : s) sum += v;
  return sum / static_cast<double>(s.size());
}

}  // namespace

TEST_CASE("step-size bounds") {
  CHECK(MaxStepSize(Algorithm::kSgda, Params(1, 0, std::nullopt, 2.0)) == 0.25);
  CHECK(MaxStepSize(Algorithm::kSeg, Params(1, 0, 1.0, std::nullopt)) ==
        doctest::Approx(0.267949).epsilon(1e-6));
  CHECK(MaxStepSize(Algorithm::kSeg, Params(0, 0, 1.0, std::nullopt)) ==
        doctest::Approx(0.577350).epsilon(1e-6));
  CHECK_THROWS_AS(MaxStepSize(Algorithm::kSgda, Params(1, 0, 1.0, std::nullopt)), Error);
  CHECK_THROWS_AS(MaxStepSize(Algorithm::kSeg, Params(1, 0, std::nullopt, 1.0)), Error);
}

TEST_CASE("gates reject step sizes at or above the bound") {
  const OperatorParams p = Params(1, 0, 1.0, 2.0);
  for (Algorithm alg : {Algorithm::kSgda, Algorithm::kSeg}) {
    const double bound = MaxStepSize(alg, p);
    SolverConfig c = Linear(alg, bound, 10, 0);
    CHECK_THROWS_AS(CheckAdmissible(c, p), Error);
    c.gamma = 1.5 * bound;
    CHECK_THROWS_AS(CheckAdmissible(c, p), Error);
    c.gamma = std::nextafter(bound, 0.0);
    CHECK_NOTHROW(CheckAdmissible(c, p));
    c.gamma = 2 * bound;
    c.allow_inadmissible = true;
    CHECK_NOTHROW(CheckAdmissible(c, p));
  }
  try {
    CheckAdmissible(Linear(Algorithm::kSgda, 0.3, 10, 0), p);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfiguration);
    CHECK(std::string(e.what()).find("0.25") != std::string::npos);
  }
}

TEST_CASE("structural gates") {
  const OperatorParams p = Params(1, 0, 1.0, 1.0);
  SolverConfig c = Linear(Algorithm::kSgda, 0.1, 10, 10);
  CHECK_THROWS_AS(CheckAdmissible(c, p), Error);  // burn_in == horizon
  c.burn_in = 0;
  c.record_stride = 0;
  CHECK_THROWS_AS(CheckAdmissible(c, p), Error);
  c.record_stride = 1;
  c.gamma = 0.0;
  CHECK_THROWS_AS(CheckAdmissible(c, p), Error);
  SolverConfig seg = Linear(Algorithm::kSeg, 0.1, 10, 0);
  seg.alpha = 1.0;
  CHECK_THROWS_AS(CheckAdmissible(seg, p), Error);
  seg.allow_inadmissible = true;
  CHECK_NOTHROW(CheckAdmissible(seg, p));
}

TEST_CASE("burn-in default") {
  CHECK(DefaultBurnIn(1000000) == 10000);
  CHECK(DefaultBurnIn(100000) == 1000);
  CHECK(DefaultBurnIn(1000) == 500);  // clipped to half of a short horizon
}

TEST_CASE("convergence envelope constants") {
  const auto sgda = MakeConvergenceEnvelope(Algorithm::kSgda, Params(1, 0, 2.0, 2.0), 0.1, 0.5, 0.25);
  CHECK(sgda.c1 == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(sgda.c2 == doctest::Approx(0.0825 / 0.12).epsilon(1e-12));
  CHECK(sgda.c2 == doctest::Approx(0.6875).epsilon(1e-12));

  const auto seg = MakeConvergenceEnvelope(Algorithm::kSeg, Params(1, 0, 1.0, 1.0), 0.1, 0.5, 0.25);
  CHECK(seg.c1 == doctest::Approx(0.025).epsilon(1e-12));
  CHECK(seg.c2 == doctest::Approx(0.3).epsilon(1e-12));

  // Noise-free floors: SGDA keeps the growth term, SEG collapses to zero.
  const auto quiet = MakeConvergenceEnvelope(Algorithm::kSgda, Params(1, 0, 2.0, 2.0, 0.5), 0.1, 0.5, 0.0);
  CHECK(quiet.c2 == doctest::Approx(2 * 0.01 * 4 * 2.25 / 0.12).epsilon(1e-12));
  CHECK(MakeConvergenceEnvelope(Algorithm::kSeg, Params(1, 0, 1.0, 1.0), 0.1, 0.5, 0.0).c2 == 0.0);
  CHECK(sgda.Bound(0, 4.0) == doctest::Approx(4.0 + sgda.c2));
  CHECK(sgda.Bound(10, 4.0) == doctest::Approx(std::pow(0.88, 10) * 4.0 + sgda.c2));

  CHECK_THROWS_AS(MakeConvergenceEnvelope(Algorithm::kSgda, Params(1, 0, 2.0, 2.0), 0.25, 0.5, 0.25), Error);
}

TEST_CASE("drift constants") {
  const auto d = MakeDriftConstants(Algorithm::kSgda, Params(1, 0, 1.0, 1.0), 0.1, 0.5, 0.25);
  CHECK(d.multiplier == doctest::Approx(0.82).epsilon(1e-12));
  CHECK(d.offset == doctest::Approx(0.2 + 0.0025).epsilon(1e-12));
  const auto s = MakeDriftConstants(Algorithm::kSeg, Params(1, 0, 1.0, 1.0), 0.1, 0.5, 0.25);
  CHECK(s.multiplier == doctest::Approx(1 - 0.025).epsilon(1e-12));
  CHECK(s.offset == doctest::Approx(0.5 * (6 * 0.01 * 0.25 + 0.05)).epsilon(1e-12));
}

TEST_CASE("single steps by direct substitution") {
  // Shifted field F(x) = x + 0.5 stands in for a realized noise value of 0.5.
  const Operator shifted(1, [](const Vector& x, Vector& out) { out = x.array() + 0.5; },
                         Params(1, 0, 1.0, 1.0), std::nullopt, OperatorKind::kCustom);
  StochasticOracle o1(shifted, kNoNoise, StreamKey{});
  CHECK(SgdaStep(Vec({1}), o1, 0.1)[0] == doctest::Approx(0.85).epsilon(1e-15));

  StochasticOracle o2(MakeLinear(1, 1), kNoNoise, StreamKey{});
  CHECK(SegStep(Vec({1}), o2, 0.1, 0.5)[0] == doctest::Approx(0.955).epsilon(1e-15));
  CHECK(SgdaStep(Vec({1.3}), o2, 0.0)[0] == 1.3);
}

TEST_CASE("solution is a fixed point of both noise-free steps") {
  std::vector<Operator> ops = {MakeLinear(1, 3), MakeLogisticGame().op(),
                               MakeQuadraticQuarticGame(4, 5).op(), MakeQuasiBilinear(0.01).op()};
  for (const Operator& op : ops) {
    StochasticOracle o(op, kNoNoise, StreamKey{});
    const Vector& xs = *op.solution();
    for (double gamma : {0.001, 0.05, 0.2}) {
      // The logistic root comes from Newton's method, so allow rounding.
      CHECK((SgdaStep(xs, o, gamma) - xs).norm() <= 1e-14);
      for (double alpha : {0.25, 0.5, 0.9}) CHECK((SegStep(xs, o, gamma, alpha) - xs).norm() <= 1e-14);
    }
  }
}

TEST_CASE("extragradient on the skew field contracts where plain descent-ascent expands") {
  StochasticOracle o(MakeQuasiBilinear(0.0).op(), kNoNoise, StreamKey{});
  const Vector eg = SegStep(Vec({1, 0}), o, 0.1, 1.0);
  CHECK(eg[0] == doctest::Approx(0.99).epsilon(1e-15));
  CHECK(eg[1] == doctest::Approx(0.1).epsilon(1e-15));
  const Vector gda = SgdaStep(Vec({1, 0}), o, 0.1);
  CHECK(gda.squaredNorm() == doctest::Approx(1.01));
  CHECK(eg.squaredNorm() < 1.0);

  // Independent 2x2 oracle: the linear map is I - g A (I - g A) for skew A.
  for (double g : {0.05, 0.1, 0.3}) {
    Matrix m(2, 2);
    m.col(0) = SegStep(Vec({1, 0}), o, g, 1.0);
    m.col(1) = SegStep(Vec({0, 1}), o, g, 1.0);
    const double radius = Eigen::EigenSolver<Matrix>(m).eigenvalues().cwiseAbs().maxCoeff();
    CHECK(radius == doctest::Approx(std::sqrt(1 - g * g + g * g * g * g)).epsilon(1e-12));
  }
}

TEST_CASE("noise-free run from the solution stays there") {
  for (Algorithm alg : {Algorithm::kSgda, Algorithm::kSeg}) {
    SolverConfig c = Linear(alg, 0.1, 1, 0);
    c.record_stride = 1;
    StochasticOracle o(MakeLinear(1, 1), kNoNoise, StreamKey{});
    const Trajectory t = Run(c, o);
    REQUIRE(t.iterates.size() == 1);
    CHECK(t.iterates[0][0] == 0.0);
    CHECK(t.CesaroMean()[0] == 0.0);
    CHECK_FALSE(t.diverged());
  }
}

TEST_CASE("oracle accounting: one query per SGDA step, two per SEG step") {
  for (std::int64_t horizon : {1, 17, 1000}) {
    StochasticOracle a(MakeLinear(1, 2), NoiseModel{NoiseKind::kGaussianIsotropic, 0.3}, StreamKey{1});
    SolverConfig c = Linear(Algorithm::kSgda, 0.1, horizon, 0);
    c.x0 = Vector::Zero(2);
    Run(c, a);
    CHECK(a.queries() == static_cast<std::uint64_t>(horizon));
    StochasticOracle b(MakeLinear(1, 2), NoiseModel{NoiseKind::kGaussianIsotropic, 0.3}, StreamKey{1});
    c.algorithm = Algorithm::kSeg;
    Run(c, b);
    CHECK(b.queries() == static_cast<std::uint64_t>(2 * horizon));
    CHECK(b.queries(StreamPhase::kLookahead) == static_cast<std::uint64_t>(horizon));
  }
}

TEST_CASE("scalar SGDA chain reaches the stationary variance") {
  const OracleFactory f(MakeLinear(1, 1), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 101);
  const Trajectory t = RunChain(Linear(Algorithm::kSgda, 0.1, 1000000, 10000), f, 0);
  const double v = 0.1 * 0.25 / (1.0 * (2 - 0.1));
  CHECK(PostBurnInVariance(t) == doctest::Approx(v).epsilon(0.03));
}

TEST_CASE("scalar SEG chain reaches the stationary variance of its AR(1) form") {
  const OracleFactory f(MakeLinear(1, 1), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 202);
  const Trajectory t = RunChain(Linear(Algorithm::kSeg, 0.1, 1000000, 10000), f, 0);
  const double a = 0.5, g = 0.1, s2 = 0.25;
  const double rho = 1 - a * g * (1 - g);
  const double v = a * a * g * g * s2 * (1 + g * g) / (1 - rho * rho);
  CHECK(v == doctest::Approx(0.0071753).epsilon(1e-4));
  CHECK(PostBurnInVariance(t) == doctest::Approx(v).epsilon(0.03));
}

TEST_CASE("mean squared error stays under the convergence envelope") {
  const Operator op = MakeLinear(1, 2);
  const NoiseModel noise{NoiseKind::kGaussianIsotropic, 0.5};
  const OracleFactory f(op, noise, 303);
  for (Algorithm alg : {Algorithm::kSgda, Algorithm::kSeg}) {
    SolverConfig c = Linear(alg, 0.1, 200, 0);
    c.x0 = Vec({3, -4});
    const auto env = MakeConvergenceEnvelope(alg, op.params(), c.gamma, c.alpha,
                                             noise.SecondMomentBound(2));
    std::vector<double> sum(200, 0.0), sum2(200, 0.0);
    const int chains = 200;
    for (int k = 0; k < chains; ++k) {
      const Trajectory t = RunChain(c, f, k);
      for (int i = 0; i < 200; ++i) {
        sum[i] += t.sq_err[i];
        sum2[i] += t.sq_err[i] * t.sq_err[i];
      }
    }
    for (int step : {10, 50, 200}) {
      const double mean = sum[step - 1] / chains;
      const double var = (sum2[step - 1] - chains * mean * mean) / (chains - 1);
      CHECK(mean <= env.Bound(step, 25.0) + 3 * std::sqrt(var / chains));
    }
  }
}

TEST_CASE("inadmissible step on the near-bilinear game trips the divergence guard") {
  const Game g = MakeQuasiBilinear(1e-4);
  const OracleFactory f(g.op(), NoiseModel{NoiseKind::kGaussianIsotropic, 0.1}, 5);
  SolverConfig c = Linear(Algorithm::kSeg, 0.1, 100000, 0);
  c.x0 = Vec({1, 1});
  c.gamma = 10 * MaxStepSize(Algorithm::kSeg, g.op().params());
  CHECK_THROWS_AS(RunChain(c, f, 0), Error);
  c.allow_inadmissible = true;
  const Trajectory t = RunChain(c, f, 0);
  REQUIRE(t.diverged());
  CHECK(t.divergence->iteration < 100000);
  CHECK(t.steps_run == t.divergence->iteration);
  CHECK(t.sq_err.size() == static_cast<std::size_t>(t.divergence->iteration - 1));
}

TEST_CASE("runs are bit-identical for identical inputs") {
  const OracleFactory f(MakeQuadraticQuarticGame(5, 1).op(),
                        NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 77);
  SolverConfig c = Linear(Algorithm::kSeg, 0.01, 5000, 100);
  c.x0 = Vector::Constant(10, 0.2);
  c.record_stride = 7;
  c.allow_inadmissible = true;
  const Trajectory a = RunChain(c, f, 3);
  const Trajectory b = RunChain(c, f, 3);
  CHECK(a.cesaro_sum == b.cesaro_sum);
  CHECK(a.sq_err == b.sq_err);
  CHECK(a.last == b.last);
  REQUIRE(a.iterates.size() == b.iterates.size());
  for (std::size_t i = 0; i < a.iterates.size(); ++i) CHECK(a.iterates[i] == b.iterates[i]);
}

TEST_CASE("thinning changes stored iterates but not the running averages") {
  const OracleFactory f(MakeLinear(1, 2), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 8);
  SolverConfig c = Linear(Algorithm::kSgda, 0.1, 10000, 500);
  c.x0 = Vector::Zero(2);
  c.record_stride = 1;
  const Trajectory dense = RunChain(c, f, 0);
  c.record_stride = 13;
  const Trajectory thin = RunChain(c, f, 0);
  CHECK(dense.cesaro_sum == thin.cesaro_sum);
  CHECK(dense.sq_err_sum == thin.sq_err_sum);
  CHECK(dense.count == 9500);
  CHECK(dense.iterates.size() == 9500);
  CHECK(thin.iterates.size() == (9500 + 12) / 13);
  CHECK(thin.recorded_steps.front() == 501);
}

TEST_CASE("x0 dimension must match the operator") {
  StochasticOracle o(MakeLinear(1, 2), kNoNoise, StreamKey{});
  CHECK_THROWS_AS(Run(Linear(Algorithm::kSgda, 0.1, 10, 0), o), Error);
}
