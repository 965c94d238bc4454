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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "viergo/oracle.hpp"
#include "viergo/types.hpp"

namespace viergo {

struct SolverConfig {
  Algorithm algorithm = Algorithm::kSgda;
  double gamma = 0.1;
  // Ratio of the update step to the look-ahead step; SEG only.
  double alpha = 0.5;
  std::int64_t horizon = 1000;
  std::int64_t burn_in = 0;
  std::int64_t record_stride = 1;
  Vector x0;
  std::uint64_t seed = 0;
  // Skips the step-size gate. Needed to reproduce divergent regimes.
  bool allow_inadmissible = false;
  double divergence_guard = 1e12;
};

// max(1000, T/100), kept below T/2 for short horizons.
std::int64_t DefaultBurnIn(std::int64_t horizon);

// Strict upper bound on gamma under which the convergence envelope holds:
// mu / G^2 for SGDA and 1 / (2 mu + sqrt(3) L) for SEG.
double MaxStepSize(Algorithm algorithm, const OperatorParams& params);

// Throws a configuration error if the step-size (or alpha) is outside the
// admissible range, unless the config carries the override.
void CheckAdmissible(const SolverConfig& config, const OperatorParams& params);

// E|x_{t+1} - x*|^2 <= (1 - c1)^t |x_0 - x*|^2 + c2.
struct ConvergenceEnvelope {
  double c1 = 0.0;
  double c2 = 0.0;

  double Bound(std::int64_t t, double initial_sq_distance) const;
};

// `sigma2` is the bound on E|Z|^2 of the oracle noise.
ConvergenceEnvelope MakeConvergenceEnvelope(Algorithm algorithm,
                                            const OperatorParams& params,
                                            double gamma, double alpha,
                                            double sigma2);

// One-step drift E[V(x+) | x] <= multiplier * V(x) + offset for the energy
// V(x) = |x - x*|^2 + 1.
struct DriftConstants {
  double multiplier = 0.0;
  double offset = 0.0;
};

DriftConstants MakeDriftConstants(Algorithm algorithm,
                                  const OperatorParams& params, double gamma,
                                  double alpha, double sigma2);

// Raw update rules. They do not check the step-size gate.
Vector SgdaStep(const Vector& x, StochasticOracle& oracle, double gamma);
Vector SegStep(const Vector& x, StochasticOracle& oracle, double gamma,
               double alpha);

struct Divergence {
  std::int64_t iteration = 0;
  double norm = 0.0;
};

// Scalar statistic evaluated on every post-burn-in iterate during a run.
struct Observer {
  std::string name;
  std::function<double(const Vector&)> eval;
};

// Steps are numbered 1..T; x_t is the state after step t. Iterates with
// t > burn_in are "post-burn-in" and feed every ergodic statistic.
struct Trajectory {
  SolverConfig config;
  std::optional<Vector> reference;  // x* of the operator, when known

  // Every record_stride-th post-burn-in iterate and its step index.
  std::vector<Vector> iterates;
  std::vector<std::int64_t> recorded_steps;

  // Online accumulators over all post-burn-in iterates (never thinned).
  std::int64_t count = 0;
  Vector cesaro_sum;
  double sq_err_sum = 0.0;

  // Per-batch sums of post-burn-in iterates, one column per batch of
  // `batch_size` consecutive iterates; feeds batch-means variances of the
  // coordinates without storing the chain.
  Matrix batch_sums;
  std::int64_t batch_size = 0;

  // |x_t - x*|^2 for t = 1..steps_run, when x* is known.
  std::vector<double> sq_err;

  // One post-burn-in series per observer, in observer order.
  std::vector<std::string> track_names;
  std::vector<std::vector<double>> tracks;

  std::int64_t steps_run = 0;
  Vector last;
  std::optional<Divergence> divergence;

  bool diverged() const { return divergence.has_value(); }
  Vector CesaroMean() const;
  std::span<const double> PostBurnInSqErr() const;
  const std::vector<double>* FindTrack(const std::string& name) const;
};

// Runs the configured chain against `oracle`. The oracle's stream state is
// consumed; the config seed is not used here (see RunChain).
Trajectory Run(const SolverConfig& config, StochasticOracle& oracle,
               std::span<const Observer> observers = {});

// Builds the oracle for chain `chain` from the factory and runs it.
Trajectory RunChain(const SolverConfig& config, const OracleFactory& factory,
                    std::uint64_t chain,
                    std::span<const Observer> observers = {});

}  // namespace viergo
