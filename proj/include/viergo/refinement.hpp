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
#include <optional>
#include <span>
#include <vector>

#include "viergo/oracle.hpp"
#include "viergo/solvers.hpp"

namespace viergo {

// How the two chains of a Richardson-Romberg pair share randomness.
enum class Coupling {
  kIndependent,
  // Both chains consume the same noise realizations, step for step.
  kCommonRandomNumbers,
};

const char* CouplingName(Coupling coupling);

struct RRResult {
  Vector xbar_gamma;
  Vector xbar_2gamma;
  Vector rr_point;  // 2 * xbar_gamma - xbar_2gamma
  // Squared distances to x*, when the operator knows its root.
  std::optional<double> err_gamma;
  std::optional<double> err_2gamma;
  std::optional<double> err_rr;
};

// Runs SGDA at gamma and 2*gamma with identical horizon and burn-in and
// extrapolates the two Cesaro means. `pair` selects the stream keys, so
// distinct pairs are independent replicates.
RRResult RrRefineRun(const SolverConfig& base, const OracleFactory& factory,
                     Coupling coupling, std::uint64_t pair = 0);

// Mean and standard error of the three squared errors over replicate pairs.
struct RRSummary {
  double gamma = 0.0;
  int n_reps = 0;
  double err_gamma = 0.0, err_gamma_se = 0.0;
  double err_2gamma = 0.0, err_2gamma_se = 0.0;
  double err_rr = 0.0, err_rr_se = 0.0;
  std::vector<RRResult> pairs;
};

RRSummary RrReplicates(const SolverConfig& base, const OracleFactory& factory,
                       Coupling coupling, int n_reps, int threads);

// Stationary bias |E[x] - x*| at one step-size, pooled over replicates.
struct BiasSlopePoint {
  double gamma = 0.0;
  Vector bias;
  double bias_norm = 0.0;
  // Three standard errors of bias_norm, from the replicate spread.
  double ci_halfwidth = 0.0;
  double slope() const { return bias_norm / gamma; }
};

// Estimates bias(gamma) / gamma on a grid of step-sizes. Each step-size uses
// its own block of chain indices, so points are mutually independent.
std::vector<BiasSlopePoint> BiasSlopeProbe(const SolverConfig& base,
                                           const OracleFactory& factory,
                                           std::span<const double> gammas,
                                           int n_reps, int threads);

}  // namespace viergo
