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

#include "viergo/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "viergo/error.hpp"
#include "viergo/parallel.hpp"

namespace viergo {

double RestrictedGap(const Operator& op, const Vector& x) {
  const Vector& xs = op.RequireSolution("restricted_gap");
  return op.Evaluate(x).dot(x - xs);
}

TestFunction RestrictedGapFunction(const Operator& op) {
  op.RequireSolution("restricted_gap");
  return TestFunction::Custom("restricted_gap",
                              [op](const Vector& x) { return RestrictedGap(op, x); });
}

BiasEstimate EstimateBias(const Trajectory& traj) {
  if (!traj.reference) Fail(ErrorCode::kPrecondition, "bias_estimate requires a known solution");
  if (traj.count < 100) {
    Fail(ErrorCode::kPrecondition, "bias_estimate needs at least 100 post-burn-in iterates");
  }
  BiasEstimate out;
  out.bias_vector = traj.CesaroMean() - *traj.reference;
  out.bias_norm = out.bias_vector.norm();
  const Vector lrv = CoordinateBatchMeansVariance(traj);
  const Vector half =
      kSigmaSlack * (lrv / static_cast<double>(traj.count)).cwiseSqrt();
  out.ci_halfwidth = half.norm();
  return out;
}

double MomentEstimate(const Trajectory& traj, int k) {
  if (!traj.reference) Fail(ErrorCode::kPrecondition, "moment_estimate requires a known solution");
  if (k < 1 || k > 4) Fail(ErrorCode::kInput, "moment order must be in {1, 2, 3, 4}");
  if (traj.count < 1) Fail(ErrorCode::kPrecondition, "trajectory has no post-burn-in iterates");
  if (k == 2) return traj.sq_err_sum / static_cast<double>(traj.count);
  double sum = 0.0;
  for (double e2 : traj.PostBurnInSqErr()) {
    switch (k) {
      case 1: sum += std::sqrt(e2); break;
      case 3: sum += e2 * std::sqrt(e2); break;
      default: sum += e2 * e2; break;
    }
  }
  return sum / static_cast<double>(traj.count);
}

std::vector<DriftProbe> DriftCheck(const OracleFactory& factory,
                                   const SolverConfig& config,
                                   std::span<const Vector> probes,
                                   int mc_samples, int threads) {
  if (mc_samples < 100) Fail(ErrorCode::kPrecondition, "drift_check needs mc_samples >= 100");
  const Operator& op = factory.op();
  const Vector& xs = op.RequireSolution("drift_check");
  const DriftConstants k =
      MakeDriftConstants(config.algorithm, op.params(), config.gamma, config.alpha,
                         factory.noise().SecondMomentBound(op.dimension()));

  std::vector<DriftProbe> out(probes.size());
  ParallelFor(probes.size(), threads, [&](std::size_t i) {
    StochasticOracle oracle = factory.Make(i);
    const Vector& x = probes[i];
    double sum = 0.0, sum_sq = 0.0;
    for (int s = 0; s < mc_samples; ++s) {
      const Vector next = config.algorithm == Algorithm::kSgda
                              ? SgdaStep(x, oracle, config.gamma)
                              : SegStep(x, oracle, config.gamma, config.alpha);
      const double v = (next - xs).squaredNorm() + 1.0;
      sum += v;
      sum_sq += v * v;
    }
    const double n = mc_samples;
    DriftProbe& p = out[i];
    p.x = x;
    p.lhs = sum / n;
    const double var = std::max(0.0, (sum_sq - n * p.lhs * p.lhs) / (n - 1.0));
    p.lhs_se = std::sqrt(var / n);
    p.rhs = k.multiplier * ((x - xs).squaredNorm() + 1.0) + k.offset;
    if (p.lhs_se > 0.0) {
      p.margin_sigmas = (p.rhs - p.lhs) / p.lhs_se;
    } else {
      p.margin_sigmas = p.rhs >= p.lhs ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
    }
  });
  return out;
}

double AnalyticStationaryVarianceLinear(Algorithm algorithm, double mu,
                                        double sigma, double gamma,
                                        double alpha) {
  if (algorithm == Algorithm::kSgda) {
    const double rho = 1.0 - gamma * mu;
    if (!(std::abs(rho) < 1.0)) Fail(ErrorCode::kDomain, "SGDA linear chain is not contracting");
    return gamma * gamma * sigma * sigma / (1.0 - rho * rho);
  }
  // x+ = rho x + alpha gamma^2 mu Z - alpha gamma Z'
  const double rho = 1.0 - alpha * gamma * mu * (1.0 - gamma * mu);
  if (!(std::abs(rho) < 1.0)) Fail(ErrorCode::kDomain, "SEG linear chain is not contracting");
  return alpha * alpha * gamma * gamma * sigma * sigma * (1.0 + gamma * gamma * mu * mu) /
         (1.0 - rho * rho);
}

MseEstimate SteadyStateMse(const Trajectory& traj, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 0.5)) {
    Fail(ErrorCode::kPrecondition, "tail_fraction must be in (0, 0.5]");
  }
  if (!traj.reference) Fail(ErrorCode::kPrecondition, "steady_state_mse requires a known solution");
  if (traj.diverged()) Fail(ErrorCode::kDomain, "steady_state_mse on a diverged chain");
  const auto total = traj.sq_err.size();
  auto n = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(total)));
  n = std::max<std::size_t>(1, std::min(n, total));
  const std::span<const double> tail = std::span<const double>(traj.sq_err).last(n);
  MseEstimate out;
  out.n = static_cast<std::int64_t>(n);
  out.mse = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(n);
  const int batches = DefaultBatchCount(n);
  if (batches >= 2 && n >= 2 * static_cast<std::size_t>(batches)) {
    out.ci_halfwidth =
        kSigmaSlack * std::sqrt(BatchMeansVariance(tail, batches) / static_cast<double>(n));
  }
  return out;
}

MseEstimate SteadyStateMse(const SolverConfig& config, StochasticOracle& oracle,
                           double tail_fraction) {
  SolverConfig cfg = config;
  cfg.record_stride = cfg.horizon;
  return SteadyStateMse(Run(cfg, oracle), tail_fraction);
}

std::vector<GapPoint> GapSweep(const SolverConfig& base,
                               const OracleFactory& factory,
                               std::span<const double> gammas, int threads) {
  const TestFunction gap = RestrictedGapFunction(factory.op());
  const Observer obs = gap.AsObserver();
  std::vector<GapPoint> out(gammas.size());
  ParallelFor(gammas.size(), threads, [&](std::size_t j) {
    SolverConfig cfg = base;
    cfg.gamma = gammas[j];
    cfg.record_stride = cfg.horizon;
    const Trajectory t = RunChain(cfg, factory, j, std::span<const Observer>(&obs, 1));
    if (t.diverged()) Fail(ErrorCode::kDomain, "gap sweep chain diverged");
    const ErgodicReport r = Analyze(t, gap);
    out[j] = GapPoint{gammas[j], r.cesaro,
                      kSigmaSlack * std::sqrt(r.long_run_variance / static_cast<double>(r.n_effective))};
  });
  return out;
}

}  // namespace viergo
