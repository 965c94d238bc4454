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

#include "viergo/refinement.hpp"

#include <cmath>

#include "viergo/error.hpp"
#include "viergo/parallel.hpp"

namespace viergo {

const char* CouplingName(Coupling coupling) {
  return coupling == Coupling::kIndependent ? "independent" : "common_random_numbers";
}

namespace {

void MeanAndStandardError(const std::vector<double>& v, double& mean, double& se) {
  const double n = static_cast<double>(v.size());
  mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

}  // namespace

RRResult RrRefineRun(const SolverConfig& base, const OracleFactory& factory,
                     Coupling coupling, std::uint64_t pair) {
  if (base.algorithm != Algorithm::kSgda) {
    Fail(ErrorCode::kUnsupported, "Richardson-Romberg refinement is only defined for SGDA");
  }
  SolverConfig fine = base;
  SolverConfig coarse = base;
  coarse.gamma = 2.0 * base.gamma;
  fine.record_stride = fine.horizon;
  coarse.record_stride = coarse.horizon;
  CheckAdmissible(fine, factory.op().params());
  CheckAdmissible(coarse, factory.op().params());

  const std::uint64_t fine_chain =
      coupling == Coupling::kIndependent ? 2 * pair : pair;
  const std::uint64_t coarse_chain =
      coupling == Coupling::kIndependent ? 2 * pair + 1 : pair;
  const Trajectory a = RunChain(fine, factory, fine_chain);
  const Trajectory b = RunChain(coarse, factory, coarse_chain);
  if (a.diverged() || b.diverged()) {
    Fail(ErrorCode::kDomain, "Richardson-Romberg chain diverged");
  }

  RRResult out;
  out.xbar_gamma = a.CesaroMean();
  out.xbar_2gamma = b.CesaroMean();
  out.rr_point = 2.0 * out.xbar_gamma - out.xbar_2gamma;
  if (const auto& xs = factory.op().solution()) {
    out.err_gamma = (out.xbar_gamma - *xs).squaredNorm();
    out.err_2gamma = (out.xbar_2gamma - *xs).squaredNorm();
    out.err_rr = (out.rr_point - *xs).squaredNorm();
  }
  return out;
}

RRSummary RrReplicates(const SolverConfig& base, const OracleFactory& factory,
                       Coupling coupling, int n_reps, int threads) {
  if (n_reps < 1) Fail(ErrorCode::kPrecondition, "rr replicates need n_reps >= 1");
  factory.op().RequireSolution("rr replicates");
  RRSummary s;
  s.gamma = base.gamma;
  s.n_reps = n_reps;
  s.pairs.resize(static_cast<std::size_t>(n_reps));
  ParallelFor(s.pairs.size(), threads, [&](std::size_t r) {
    s.pairs[r] = RrRefineRun(base, factory, coupling, r);
  });
  std::vector<double> e1, e2, er;
  for (const RRResult& p : s.pairs) {
    e1.push_back(*p.err_gamma);
    e2.push_back(*p.err_2gamma);
    er.push_back(*p.err_rr);
  }
  MeanAndStandardError(e1, s.err_gamma, s.err_gamma_se);
  MeanAndStandardError(e2, s.err_2gamma, s.err_2gamma_se);
  MeanAndStandardError(er, s.err_rr, s.err_rr_se);
  return s;
}

std::vector<BiasSlopePoint> BiasSlopeProbe(const SolverConfig& base,
                                           const OracleFactory& factory,
                                           std::span<const double> gammas,
                                           int n_reps, int threads) {
  if (n_reps < 2) Fail(ErrorCode::kPrecondition, "bias slope probe needs n_reps >= 2");
  const Vector& xs = factory.op().RequireSolution("bias slope probe");
  const int d = factory.op().dimension();
  const auto n_gammas = gammas.size();
  std::vector<Vector> means(n_gammas * static_cast<std::size_t>(n_reps));
  std::vector<SolverConfig> configs;
  for (double g : gammas) {
    SolverConfig c = base;
    c.gamma = g;
    c.record_stride = c.horizon;
    CheckAdmissible(c, factory.op().params());
    configs.push_back(c);
  }
  ParallelFor(means.size(), threads, [&](std::size_t i) {
    const std::size_t j = i / static_cast<std::size_t>(n_reps);
    const Trajectory t = RunChain(configs[j], factory, i);
    if (t.diverged()) Fail(ErrorCode::kDomain, "bias probe chain diverged");
    means[i] = t.CesaroMean();
  });

  std::vector<BiasSlopePoint> out;
  for (std::size_t j = 0; j < n_gammas; ++j) {
    Vector pooled = Vector::Zero(d);
    for (int r = 0; r < n_reps; ++r) pooled += means[j * n_reps + r];
    pooled /= n_reps;
    Vector var = Vector::Zero(d);
    for (int r = 0; r < n_reps; ++r) {
      var += (means[j * n_reps + r] - pooled).cwiseAbs2();
    }
    var /= (n_reps - 1.0);
    BiasSlopePoint p;
    p.gamma = gammas[j];
    p.bias = pooled - xs;
    p.bias_norm = p.bias.norm();
    p.ci_halfwidth = 3.0 * (var / static_cast<double>(n_reps)).cwiseSqrt().norm();
    out.push_back(p);
  }
  return out;
}

}  // namespace viergo
