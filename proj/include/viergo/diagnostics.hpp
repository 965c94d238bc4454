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
#include <span>
#include <vector>

#include "viergo/ergodics.hpp"
#include "viergo/operators.hpp"
#include "viergo/oracle.hpp"
#include "viergo/solvers.hpp"

namespace viergo {

// Monte-Carlo comparisons use this many standard errors of slack.
inline constexpr double kSigmaSlack = 3.0;

// <F(x), x - x*> for the operator's single known root. Upper-bounds the
// duality gap of a convex-concave game.
double RestrictedGap(const Operator& op, const Vector& x);
TestFunction RestrictedGapFunction(const Operator& op);

struct BiasEstimate {
  Vector bias_vector;  // Cesaro mean of the iterates minus x*
  double bias_norm = 0.0;
  // Norm of the per-coordinate half-widths (kSigmaSlack batch-means
  // standard errors each).
  double ci_halfwidth = 0.0;
};

BiasEstimate EstimateBias(const Trajectory& traj);

// Mean of |x_t - x*|^k over post-burn-in iterates, k in {1, 2, 3, 4}.
double MomentEstimate(const Trajectory& traj, int k);

struct DriftProbe {
  Vector x;
  double lhs = 0.0;     // Monte-Carlo E[V(x+)], V(x) = |x - x*|^2 + 1
  double lhs_se = 0.0;
  double rhs = 0.0;     // multiplier * V(x) + offset
  double margin_sigmas = 0.0;
};

// One-step drift inequality at each probe, with mc_samples one-step draws
// per probe. Probe i uses chain index i of the factory.
std::vector<DriftProbe> DriftCheck(const OracleFactory& factory,
                                   const SolverConfig& config,
                                   std::span<const Vector> probes,
                                   int mc_samples, int threads);

// Closed-form stationary variance of the scalar linear chain F(x) = mu x
// with additive N(0, sigma^2) noise.
double AnalyticStationaryVarianceLinear(Algorithm algorithm, double mu,
                                        double sigma, double gamma,
                                        double alpha);

struct MseEstimate {
  double mse = 0.0;
  double ci_halfwidth = 0.0;
  std::int64_t n = 0;
};

// Average of |x_t - x*|^2 over the last tail_fraction of the horizon, with
// a kSigmaSlack batch-means half-width.
MseEstimate SteadyStateMse(const Trajectory& traj, double tail_fraction);
MseEstimate SteadyStateMse(const SolverConfig& config, StochasticOracle& oracle,
                           double tail_fraction);

struct GapPoint {
  double gamma = 0.0;
  double avg_gap = 0.0;
  double ci_halfwidth = 0.0;
};

// Post-burn-in average of the restricted gap, one chain per step-size.
std::vector<GapPoint> GapSweep(const SolverConfig& base,
                               const OracleFactory& factory,
                               std::span<const double> gammas, int threads);

}  // namespace viergo
