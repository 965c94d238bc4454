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

#include "viergo/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "viergo/error.hpp"
#include "viergo/format.hpp"

namespace viergo {

std::int64_t DefaultBurnIn(std::int64_t horizon) {
  return std::min<std::int64_t>(std::max<std::int64_t>(1000, horizon / 100),
                                horizon / 2);
}

double MaxStepSize(Algorithm algorithm, const OperatorParams& params) {
  if (algorithm == Algorithm::kSgda) {
    if (!params.growth || !(*params.growth > 0.0)) {
      Fail(ErrorCode::kConfiguration, "SGDA step-size bound needs a positive growth constant G");
    }
    if (!(params.mu > 0.0)) {
      Fail(ErrorCode::kConfiguration, "SGDA step-size bound needs mu > 0");
    }
    return params.mu / (*params.growth * *params.growth);
  }
  if (!params.lipschitz || !(*params.lipschitz > 0.0)) {
    Fail(ErrorCode::kConfiguration, "SEG step-size bound needs a positive Lipschitz constant L");
  }
  if (!(params.mu >= 0.0)) Fail(ErrorCode::kConfiguration, "SEG step-size bound needs mu >= 0");
  return 1.0 / (2.0 * params.mu + std::sqrt(3.0) * *params.lipschitz);
}

void CheckAdmissible(const SolverConfig& config, const OperatorParams& params) {
  if (!(config.gamma > 0.0)) Fail(ErrorCode::kConfiguration, "gamma must be > 0");
  if (config.horizon < 1) Fail(ErrorCode::kConfiguration, "horizon must be >= 1");
  if (config.burn_in < 0 || config.burn_in >= config.horizon) {
    Fail(ErrorCode::kConfiguration, "burn_in must satisfy 0 <= burn_in < horizon");
  }
  if (config.record_stride < 1) Fail(ErrorCode::kConfiguration, "record_stride must be >= 1");
  if (config.allow_inadmissible) return;
  if (config.algorithm == Algorithm::kSeg &&
      !(config.alpha > 0.0 && config.alpha < 1.0)) {
    Fail(ErrorCode::kConfiguration,
         "SEG needs alpha in (0, 1); set allow_inadmissible to override");
  }
  const double bound = MaxStepSize(config.algorithm, params);
  if (!(config.gamma < bound)) {
    Fail(ErrorCode::kConfiguration,
         "gamma=" + FormatNumber(config.gamma) + " is not below the " +
             AlgorithmName(config.algorithm) + " step-size bound " + FormatNumber(bound) +
             (config.algorithm == Algorithm::kSgda ? " (mu/G^2)" : " (1/(2mu+sqrt(3)L))") +
             "; set allow_inadmissible to override");
  }
}

double ConvergenceEnvelope::Bound(std::int64_t t, double initial_sq_distance) const {
  return std::pow(1.0 - c1, static_cast<double>(t)) * initial_sq_distance + c2;
}

namespace {

void RequireAdmissibleGamma(Algorithm algorithm, const OperatorParams& params,
                            double gamma, double alpha) {
  const double bound = MaxStepSize(algorithm, params);
  if (!(gamma > 0.0 && gamma < bound)) {
    std::ostringstream msg;
    msg << "gamma=" << gamma << " is outside (0, " << bound << ")";
    Fail(ErrorCode::kConfiguration, msg.str());
  }
  if (algorithm == Algorithm::kSeg && !(alpha > 0.0 && alpha < 1.0)) {
    Fail(ErrorCode::kConfiguration, "SEG needs alpha in (0, 1)");
  }
}

}  // namespace

ConvergenceEnvelope MakeConvergenceEnvelope(Algorithm algorithm,
                                            const OperatorParams& params,
                                            double gamma, double alpha,
                                            double sigma2) {
  RequireAdmissibleGamma(algorithm, params, gamma, alpha);
  ConvergenceEnvelope env;
  const double mu = params.mu, lambda = params.lambda;
  if (algorithm == Algorithm::kSgda) {
    const double g2 = *params.growth * *params.growth;
    const double r1 = 1.0 + params.radius_bound;
    env.c1 = 2.0 * mu * gamma - 2.0 * gamma * gamma * g2;
    env.c2 = (2.0 * lambda * gamma + 2.0 * gamma * gamma * g2 * r1 * r1 +
              gamma * gamma * sigma2) /
             env.c1;
  } else {
    env.c1 = alpha * (1.0 - alpha) * gamma * mu;
    if (!(env.c1 > 0.0)) {
      Fail(ErrorCode::kConfiguration, "SEG envelope needs mu > 0");
    }
    env.c2 = 2.0 * alpha * (3.0 * gamma * gamma * sigma2 + gamma * lambda) / env.c1;
  }
  return env;
}

DriftConstants MakeDriftConstants(Algorithm algorithm,
                                  const OperatorParams& params, double gamma,
                                  double alpha, double sigma2) {
  RequireAdmissibleGamma(algorithm, params, gamma, alpha);
  DriftConstants out;
  const double mu = params.mu, lambda = params.lambda;
  if (algorithm == Algorithm::kSgda) {
    const double g2 = *params.growth * *params.growth;
    const double r1 = 1.0 + params.radius_bound;
    out.multiplier = 1.0 - 2.0 * mu * gamma + 2.0 * gamma * gamma * g2;
    out.offset = 2.0 * lambda * gamma + 2.0 * mu * gamma +
                 2.0 * gamma * gamma * g2 * (r1 * r1 - 1.0) + gamma * gamma * sigma2;
  } else {
    out.multiplier = 1.0 - alpha * (1.0 - alpha) * gamma * mu;
    out.offset = alpha * (6.0 * gamma * gamma * sigma2 + 2.0 * gamma * lambda +
                          (1.0 - alpha) * gamma * mu);
  }
  return out;
}

namespace {

struct StepWorkspace {
  Vector g;
  Vector half;
};

inline void SgdaInPlace(Vector& x, StochasticOracle& oracle, double gamma,
                        StepWorkspace& ws) {
  oracle.SampleInto(x, ws.g, StreamPhase::kBase);
  x.noalias() -= gamma * ws.g;
}

inline void SegInPlace(Vector& x, StochasticOracle& oracle, double gamma,
                       double alpha, StepWorkspace& ws) {
  oracle.SampleInto(x, ws.g, StreamPhase::kBase);
  ws.half = x;
  ws.half.noalias() -= gamma * ws.g;
  oracle.SampleInto(ws.half, ws.g, StreamPhase::kLookahead);
  x.noalias() -= (alpha * gamma) * ws.g;
}

}  // namespace

Vector SgdaStep(const Vector& x, StochasticOracle& oracle, double gamma) {
  StepWorkspace ws;
  Vector out = x;
  SgdaInPlace(out, oracle, gamma, ws);
  return out;
}

Vector SegStep(const Vector& x, StochasticOracle& oracle, double gamma,
               double alpha) {
  StepWorkspace ws;
  Vector out = x;
  SegInPlace(out, oracle, gamma, alpha, ws);
  return out;
}

Vector Trajectory::CesaroMean() const {
  if (count == 0) Fail(ErrorCode::kPrecondition, "trajectory has no post-burn-in iterates");
  return cesaro_sum / static_cast<double>(count);
}

std::span<const double> Trajectory::PostBurnInSqErr() const {
  const auto b = static_cast<std::size_t>(std::min<std::int64_t>(config.burn_in, steps_run));
  if (sq_err.size() <= b) return {};
  return std::span<const double>(sq_err).subspan(b);
}

const std::vector<double>* Trajectory::FindTrack(const std::string& name) const {
  for (std::size_t i = 0; i < track_names.size(); ++i)
    if (track_names[i] == name) return &tracks[i];
  return nullptr;
}

Trajectory Run(const SolverConfig& config, StochasticOracle& oracle,
               std::span<const Observer> observers) {
  const Operator& op = oracle.op();
  CheckAdmissible(config, op.params());
  const int d = op.dimension();
  if (config.x0.size() != d) {
    Fail(ErrorCode::kInput, "x0 has the wrong dimension for the operator");
  }

  Trajectory traj;
  traj.config = config;
  traj.reference = op.solution();
  traj.cesaro_sum = Vector::Zero(d);
  const std::int64_t n_post = config.horizon - config.burn_in;
  const auto n_batches = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(n_post))));
  if (n_batches >= 2) {
    traj.batch_size = n_post / n_batches;
    traj.batch_sums = Matrix::Zero(d, n_batches);
  }
  if (traj.reference) traj.sq_err.reserve(static_cast<std::size_t>(config.horizon));
  for (const Observer& obs : observers) {
    traj.track_names.push_back(obs.name);
    traj.tracks.emplace_back().reserve(static_cast<std::size_t>(n_post));
  }

  StepWorkspace ws;
  ws.g.resize(d);
  ws.half.resize(d);
  Vector x = config.x0;
  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    if (config.algorithm == Algorithm::kSgda) {
      SgdaInPlace(x, oracle, config.gamma, ws);
    } else {
      SegInPlace(x, oracle, config.gamma, config.alpha, ws);
    }
    traj.steps_run = t;
    const double norm = x.norm();
    if (!std::isfinite(norm) || norm > config.divergence_guard) {
      traj.divergence = Divergence{t, norm};
      break;
    }
    double e2 = 0.0;
    if (traj.reference) {
      e2 = (x - *traj.reference).squaredNorm();
      traj.sq_err.push_back(e2);
    }
    if (t <= config.burn_in) continue;

    const std::int64_t k = t - config.burn_in - 1;  // post-burn-in index
    ++traj.count;
    traj.cesaro_sum += x;
    traj.sq_err_sum += e2;
    if (traj.batch_size > 0) {
      const std::int64_t batch = k / traj.batch_size;
      if (batch < traj.batch_sums.cols()) traj.batch_sums.col(batch) += x;
    }
    if (k % config.record_stride == 0) {
      traj.iterates.push_back(x);
      traj.recorded_steps.push_back(t);
    }
    for (std::size_t i = 0; i < observers.size(); ++i) {
      traj.tracks[i].push_back(observers[i].eval(x));
    }
  }
  traj.last = x;
  return traj;
}

Trajectory RunChain(const SolverConfig& config, const OracleFactory& factory,
                    std::uint64_t chain, std::span<const Observer> observers) {
  StochasticOracle oracle = factory.Make(chain);
  return Run(config, oracle, observers);
}

}  // namespace viergo
