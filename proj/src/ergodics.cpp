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

#include "viergo/ergodics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "viergo/error.hpp"
#include "viergo/parallel.hpp"

namespace viergo {

TestFunction TestFunction::Coordinate(int index) {
  if (index < 0) Fail(ErrorCode::kInput, "coordinate index must be >= 0");
  TestFunction f(TestFunctionKind::kCoordinate,
                 "coordinate(" + std::to_string(index) + ")",
                 [index](const Vector& x) { return x[index]; });
  f.coordinate_ = index;
  f.growth_ = 1.0;
  return f;
}

TestFunction TestFunction::SquaredError(Vector reference) {
  TestFunction f(TestFunctionKind::kSquaredError, "squared_error",
                 [ref = reference](const Vector& x) { return (x - ref).squaredNorm(); });
  f.reference_ = std::move(reference);
  return f;
}

TestFunction TestFunction::GameValue(const Game& game) {
  return TestFunction(TestFunctionKind::kGameValue, "game_value",
                      [game](const Vector& x) { return game.Value(x); });
}

TestFunction TestFunction::Custom(std::string name,
                                  std::function<double(const Vector&)> eval,
                                  std::optional<double> growth_constant) {
  TestFunction f(TestFunctionKind::kCustom, std::move(name), std::move(eval));
  f.growth_ = growth_constant;
  return f;
}

namespace {

bool UsesOwnReference(const Trajectory& traj, const TestFunction& f) {
  return f.kind() == TestFunctionKind::kSquaredError && traj.reference &&
         f.reference()->size() == traj.reference->size() &&
         *f.reference() == *traj.reference;
}

void RequirePostBurnIn(const Trajectory& traj) {
  if (traj.count < 1) Fail(ErrorCode::kPrecondition, "trajectory has no post-burn-in iterates");
}

}  // namespace

std::optional<std::vector<double>> PostBurnInSeries(const Trajectory& traj,
                                                    const TestFunction& f) {
  if (UsesOwnReference(traj, f)) {
    auto s = traj.PostBurnInSqErr();
    return std::vector<double>(s.begin(), s.end());
  }
  if (const auto* track = traj.FindTrack(f.name())) return *track;
  if (traj.config.record_stride == 1 &&
      static_cast<std::int64_t>(traj.iterates.size()) == traj.count) {
    std::vector<double> out;
    out.reserve(traj.iterates.size());
    for (const Vector& x : traj.iterates) out.push_back(f(x));
    return out;
  }
  return std::nullopt;
}

double CesaroMean(const Trajectory& traj, const TestFunction& f) {
  RequirePostBurnIn(traj);
  const auto n = static_cast<double>(traj.count);
  if (f.kind() == TestFunctionKind::kCoordinate) {
    if (f.coordinate() >= traj.cesaro_sum.size()) {
      Fail(ErrorCode::kInput, "coordinate index out of range");
    }
    return traj.cesaro_sum[f.coordinate()] / n;
  }
  if (UsesOwnReference(traj, f)) return traj.sq_err_sum / n;
  const auto series = PostBurnInSeries(traj, f);
  if (!series) {
    Fail(ErrorCode::kPrecondition,
         "Cesaro mean of '" + f.name() +
             "' needs an observer track or record_stride = 1");
  }
  return std::accumulate(series->begin(), series->end(), 0.0) / n;
}

int DefaultBatchCount(std::size_t n) {
  return static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
}

double BatchMeansVariance(std::span<const double> samples, int n_batches) {
  if (n_batches < 2) Fail(ErrorCode::kPrecondition, "batch means needs n_batches >= 2");
  if (samples.size() < 2 * static_cast<std::size_t>(n_batches)) {
    Fail(ErrorCode::kPrecondition, "batch means needs at least 2 samples per batch");
  }
  const std::size_t b = samples.size() / static_cast<std::size_t>(n_batches);
  std::vector<double> means(static_cast<std::size_t>(n_batches));
  for (std::size_t k = 0; k < means.size(); ++k) {
    double s = 0.0;
    for (std::size_t i = k * b; i < (k + 1) * b; ++i) s += samples[i];
    means[k] = s / static_cast<double>(b);
  }
  const double grand = std::accumulate(means.begin(), means.end(), 0.0) / means.size();
  double ss = 0.0;
  for (double m : means) ss += (m - grand) * (m - grand);
  return static_cast<double>(b) * ss / static_cast<double>(means.size() - 1);
}

Vector CoordinateBatchMeansVariance(const Trajectory& traj) {
  const auto k = traj.batch_sums.cols();
  if (traj.batch_size < 1 || k < 2) {
    Fail(ErrorCode::kPrecondition, "trajectory is too short for batch means");
  }
  const double b = static_cast<double>(traj.batch_size);
  const Matrix means = traj.batch_sums / b;
  const Vector grand = means.rowwise().mean();
  const Matrix centered = means.colwise() - grand;
  return b * centered.rowwise().squaredNorm() / static_cast<double>(k - 1);
}

ErgodicReport Analyze(const Trajectory& traj, const TestFunction& f) {
  ErgodicReport report;
  report.cesaro = CesaroMean(traj, f);
  report.n_effective = traj.count;
  if (const auto series = PostBurnInSeries(traj, f)) {
    report.long_run_variance = BatchMeansVariance(*series, DefaultBatchCount(series->size()));
  } else if (f.kind() == TestFunctionKind::kCoordinate) {
    report.long_run_variance = CoordinateBatchMeansVariance(traj)[f.coordinate()];
  } else {
    Fail(ErrorCode::kPrecondition, "no post-burn-in series available for '" + f.name() + "'");
  }
  return report;
}

namespace {

// Sum of f over the post-burn-in iterates of a finished run.
double PostBurnInSum(const Trajectory& traj, const TestFunction& f) {
  if (f.kind() == TestFunctionKind::kCoordinate) return traj.cesaro_sum[f.coordinate()];
  if (UsesOwnReference(traj, f)) return traj.sq_err_sum;
  const auto series = PostBurnInSeries(traj, f);
  if (!series) Fail(ErrorCode::kPrecondition, "no post-burn-in series for '" + f.name() + "'");
  return std::accumulate(series->begin(), series->end(), 0.0);
}

}  // namespace

std::vector<double> CltReplicates(const SolverConfig& config,
                                  const OracleFactory& factory,
                                  const TestFunction& f, int n_reps,
                                  double center, int threads) {
  if (n_reps < 1) Fail(ErrorCode::kPrecondition, "clt_replicates needs n_reps >= 1");
  SolverConfig cfg = config;
  cfg.record_stride = cfg.horizon;
  const auto& solution = factory.op().solution();
  const bool accumulated =
      f.kind() == TestFunctionKind::kCoordinate ||
      (f.kind() == TestFunctionKind::kSquaredError && solution &&
       *solution == *f.reference());
  std::vector<Observer> observers;
  if (!accumulated) observers.push_back(f.AsObserver());
  std::vector<double> out(static_cast<std::size_t>(n_reps));
  ParallelFor(out.size(), threads, [&](std::size_t r) {
    const Trajectory traj = RunChain(cfg, factory, r, observers);
    if (traj.diverged()) {
      Fail(ErrorCode::kDomain, "replicate " + std::to_string(r) + " diverged at iteration " +
                                   std::to_string(traj.divergence->iteration));
    }
    const double n = static_cast<double>(traj.count);
    out[r] = (PostBurnInSum(traj, f) - n * center) / std::sqrt(n);
  });
  return out;
}

SampleSummary Summarize(std::span<const double> values) {
  SampleSummary s;
  s.n = values.size();
  if (s.n == 0) return s;
  // Summing in sorted order makes the result independent of replicate order.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / s.n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : sorted) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(s.n);
  s.variance = s.n > 1 ? m2 / (n - 1.0) : 0.0;
  s.stddev = std::sqrt(s.variance);
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return s;
}

std::vector<LlnPoint> LlnProbe(const SolverConfig& config,
                               StochasticOracle& oracle, const TestFunction& f,
                               std::span<const std::int64_t> checkpoints) {
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] <= config.burn_in || checkpoints[i] > config.horizon ||
        (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
      Fail(ErrorCode::kPrecondition,
           "lln_probe checkpoints must be increasing, beyond burn-in and <= horizon");
    }
  }
  SolverConfig cfg = config;
  cfg.record_stride = cfg.horizon;
  const Observer obs = f.AsObserver();
  const Trajectory traj = Run(cfg, oracle, std::span<const Observer>(&obs, 1));
  if (traj.diverged()) Fail(ErrorCode::kDomain, "lln_probe chain diverged");
  const std::vector<double>& series = traj.tracks.front();
  std::vector<LlnPoint> out;
  double sum = 0.0;
  std::size_t i = 0;
  for (std::int64_t cp : checkpoints) {
    const auto upto = static_cast<std::size_t>(cp - config.burn_in);
    for (; i < upto; ++i) sum += series[i];
    out.push_back({cp, sum / static_cast<double>(upto)});
  }
  return out;
}

}  // namespace viergo
