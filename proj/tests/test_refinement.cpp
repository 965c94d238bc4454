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

#include "doctest.h"
#include "viergo/error.hpp"
#include "viergo/refinement.hpp"

using namespace viergo;

namespace {

SolverConfig Base(double gamma, std::int64_t horizon, std::int64_t burn_in, int d) {
  SolverConfig c;
  c.gamma = gamma;
  c.horizon = horizon;
  c.burn_in = burn_in;
  c.x0 = Vector::Zero(d);
  return c;
}

}  // namespace

TEST_CASE("noise-free refinement at the solution returns the solution") {
  const OracleFactory f(MakeLinear(1, 2), NoiseModel{}, 1);
  for (Coupling c : {Coupling::kIndependent, Coupling::kCommonRandomNumbers}) {
    const RRResult r = RrRefineRun(Base(0.1, 500, 10, 2), f, c);
    CHECK(r.xbar_gamma == Vector::Zero(2));
    CHECK(r.xbar_2gamma == Vector::Zero(2));
    CHECK(r.rr_point == Vector::Zero(2));
    CHECK(*r.err_rr == 0.0);
  }
}

TEST_CASE("extrapolation identity holds exactly") {
  const OracleFactory f(MakeLogisticGame().op(), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 4);
  const Vector& xs = *f.op().solution();
  const RRResult r = RrRefineRun(Base(0.02, 5000, 500, 2), f, Coupling::kIndependent, 3);
  CHECK(r.rr_point == 2.0 * r.xbar_gamma - r.xbar_2gamma);
  const Vector lhs = r.rr_point - xs;
  const Vector rhs = 2.0 * (r.xbar_gamma - xs) - (r.xbar_2gamma - xs);
  CHECK((lhs - rhs).norm() <= 1e-15);
  CHECK(*r.err_rr == doctest::Approx(lhs.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("linear chains are unbiased and refinement keeps them centred") {
  const OracleFactory f(MakeLinear(1, 1), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 17);
  const RRResult r = RrRefineRun(Base(0.05, 1000000, 10000, 1), f, Coupling::kIndependent);
  // Each average has variance sigma^2 / (mu^2 n); the extrapolation combines
  // them as 4 Var(fine) + Var(coarse) under independence.
  const double n = 990000.0;
  const double se = std::sqrt(5.0 * 0.25 / n);
  CHECK(std::abs(r.rr_point[0]) < 3 * se);
}

TEST_CASE("refinement refuses SEG and an inadmissible doubled step") {
  const OracleFactory f(MakeLogisticGame().op(), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 1);
  SolverConfig seg = Base(0.02, 100, 10, 2);
  seg.algorithm = Algorithm::kSeg;
  try {
    RrRefineRun(seg, f, Coupling::kIndependent);
    FAIL("expected an unsupported-combination error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupported);
  }
  const double bound = MaxStepSize(Algorithm::kSgda, f.op().params());
  SolverConfig near = Base(0.75 * bound, 100, 10, 2);  // gamma fine, 2 gamma not
  try {
    RrRefineRun(near, f, Coupling::kIndependent);
    FAIL("expected a configuration error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfiguration);
  }
  near.allow_inadmissible = true;
  CHECK_NOTHROW(RrRefineRun(near, f, Coupling::kIndependent));
}

TEST_CASE("common random numbers keep the paired chains closer") {
  const OracleFactory f(MakeLogisticGame().op(), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 23);
  SolverConfig fine = Base(0.02, 20000, 0, 2);
  fine.record_stride = 1;
  SolverConfig coarse = fine;
  coarse.gamma = 0.04;
  auto mean_distance = [&](std::uint64_t a, std::uint64_t b) {
    const Trajectory x = RunChain(fine, f, a);
    const Trajectory y = RunChain(coarse, f, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.iterates.size(); ++i) sum += (x.iterates[i] - y.iterates[i]).norm();
    return sum / static_cast<double>(x.iterates.size());
  };
  // Same pairing as the refinement: chain p twice under CRN, 2p and 2p+1 otherwise.
  CHECK(mean_distance(0, 0) < mean_distance(0, 1));
}

TEST_CASE("replicate summary is thread-count independent") {
  const OracleFactory f(MakeLogisticGame().op(), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 6);
  const SolverConfig c = Base(0.02, 3000, 300, 2);
  const RRSummary a = RrReplicates(c, f, Coupling::kIndependent, 6, 1);
  const RRSummary b = RrReplicates(c, f, Coupling::kIndependent, 6, 3);
  CHECK(a.err_rr == b.err_rr);
  CHECK(a.err_gamma_se == b.err_gamma_se);
  CHECK(a.pairs.size() == 6);
  CHECK(a.n_reps == 6);
}

TEST_CASE("bias slope probe on the linear benchmark finds no bias") {
  const OracleFactory f(MakeLinear(1, 1), NoiseModel{NoiseKind::kGaussianIsotropic, 0.5}, 2);
  const std::vector<double> gammas = {0.05, 0.1};
  const auto pts = BiasSlopeProbe(Base(0.1, 100000, 1000, 1), f, gammas, 10, 1);
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) CHECK(p.bias_norm < p.ci_halfwidth);
  CHECK(pts[1].slope() == doctest::Approx(pts[1].bias_norm / 0.1));
}
