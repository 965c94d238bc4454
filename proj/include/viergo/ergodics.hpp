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
#include <utility>
#include <vector>

#include "viergo/operators.hpp"
#include "viergo/solvers.hpp"

namespace viergo {

enum class TestFunctionKind { kCoordinate, kSquaredError, kGameValue, kCustom };

// Scalar test function l applied to chain iterates. Pure; the kind tells
// the estimators which online accumulator (if any) already holds its sum.
class TestFunction {
 public:
  static TestFunction Coordinate(int index);
  static TestFunction SquaredError(Vector reference);
  static TestFunction GameValue(const Game& game);
  static TestFunction Custom(std::string name,
                             std::function<double(const Vector&)> eval,
                             std::optional<double> growth_constant = {});

  double operator()(const Vector& x) const { return eval_(x); }

  TestFunctionKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int coordinate() const { return coordinate_; }
  const std::optional<Vector>& reference() const { return reference_; }
  // G_l with |l(x)| <= G_l (1 + |x|), when one exists.
  const std::optional<double>& growth_constant() const { return growth_; }

  Observer AsObserver() const { return Observer{name_, eval_}; }

 private:
  TestFunction(TestFunctionKind kind, std::string name,
               std::function<double(const Vector&)> eval)
      : kind_(kind), name_(std::move(name)), eval_(std::move(eval)) {}

  TestFunctionKind kind_;
  std::string name_;
  std::function<double(const Vector&)> eval_;
  int coordinate_ = -1;
  std::optional<Vector> reference_;
  std::optional<double> growth_;
};

struct ErgodicReport {
  double cesaro = 0.0;
  double long_run_variance = 0.0;
  std::int64_t n_effective = 0;
};

// (1/N) sum of f over post-burn-in iterates. Coordinates and the squared
// error against the trajectory's own x* come from the exact online
// accumulators; other functions need an observer track of the same name or
// unthinned stored iterates.
double CesaroMean(const Trajectory& traj, const TestFunction& f);

// Post-burn-in values of f, in step order, when they can be recovered.
std::optional<std::vector<double>> PostBurnInSeries(const Trajectory& traj,
                                                    const TestFunction& f);

// floor(sqrt(n)).
int DefaultBatchCount(std::size_t n);

// b * (sample variance of the n_batches contiguous batch means), with
// b = floor(n / n_batches); trailing samples that do not fill a batch are
// dropped. Estimates the CLT variance lim N^{-1} E[S_N^2].
double BatchMeansVariance(std::span<const double> samples, int n_batches);

// Batch-means variance of each coordinate from the trajectory's online
// batch sums.
Vector CoordinateBatchMeansVariance(const Trajectory& traj);

ErgodicReport Analyze(const Trajectory& traj, const TestFunction& f);

// n_reps independent chains (chain indices 0..n_reps-1 of the factory);
// returns N^{-1/2} * sum over post-burn-in iterates of (f(x_t) - center).
std::vector<double> CltReplicates(const SolverConfig& config,
                                  const OracleFactory& factory,
                                  const TestFunction& f, int n_reps,
                                  double center, int threads);

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double stddev = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

SampleSummary Summarize(std::span<const double> values);

struct LlnPoint {
  std::int64_t checkpoint = 0;
  double cesaro = 0.0;
};

// Cesaro mean of f over post-burn-in iterates up to each checkpoint step.
std::vector<LlnPoint> LlnProbe(const SolverConfig& config,
                               StochasticOracle& oracle, const TestFunction& f,
                               std::span<const std::int64_t> checkpoints);

}  // namespace viergo
