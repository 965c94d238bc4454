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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viergo/error.hpp"
#include "viergo/operators.hpp"
#include "viergo/oracle.hpp"
#include "viergo/solvers.hpp"

namespace viergo {

struct OperatorConfig {
  std::string kind = "linear";
  double mu = 1.0;             // linear
  int dim = 1;                 // linear: d; quadratic_quartic_game: d per player
  std::uint64_t seed = 0;      // quadratic_quartic_game
  double conditioning = 0.1;   // quadratic_quartic_game
  double quartic_scale = 0.25;
  double local_radius = 3.0;
  double epsilon = 0.0;        // quasi_bilinear
  // Replace the declared constants; validate then audits the claim.
  std::optional<double> growth;
  std::optional<double> lipschitz;

  bool operator==(const OperatorConfig&) const = default;
};

struct NoiseConfig {
  std::string kind = "gaussian_isotropic";
  double sigma = 0.5;

  bool operator==(const NoiseConfig&) const = default;
};

struct SolverSection {
  std::string algorithm = "SGDA";
  double gamma = 0.1;
  double alpha = 0.5;
  std::int64_t horizon = 100000;
  std::optional<std::int64_t> burn_in;  // DefaultBurnIn(horizon) when unset
  std::int64_t record_stride = 1;
  // "zero", "ones", "fill" (every coordinate = x0_fill) or "values".
  std::string x0_mode = "zero";
  double x0_fill = 0.0;
  std::vector<double> x0_values;
  bool allow_inadmissible = false;
  double tail_fraction = 0.5;
  double divergence_guard = 1e12;

  bool operator==(const SolverSection&) const = default;
};

struct BiasSweepConfig {
  std::vector<double> gammas;
  std::vector<std::string> algorithms;  // defaults to solver.algorithm

  bool operator==(const BiasSweepConfig&) const = default;
};

struct CltConfig {
  int n_reps = 2000;
  std::string center_mode = "zero";  // "zero" or "estimate"
  std::vector<std::int64_t> horizons;
  std::vector<double> gammas;
  std::vector<std::string> algorithms;
  // "game_value", "squared_error" or "coordinate:<i>".
  std::string test_function = "game_value";
  std::int64_t burn_in = 0;

  bool operator==(const CltConfig&) const = default;
};

struct RrConfig {
  std::string coupling = "independent";
  int n_reps = 20;
  std::vector<double> gammas;

  bool operator==(const RrConfig&) const = default;
};

struct ValidateConfig {
  int n_samples = 1000;
  double radius = 1.0;
  int drift_probes = 20;
  int drift_mc_samples = 1000;

  bool operator==(const ValidateConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  bool emit_svg = false;

  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  OperatorConfig op;
  NoiseConfig noise;
  SolverSection solver;
  std::optional<BiasSweepConfig> bias_sweep;
  std::optional<CltConfig> clt;
  std::optional<RrConfig> rr;
  std::optional<ValidateConfig> validate;
  OutputConfig output;

  bool operator==(const ExperimentConfig&) const = default;
};

// Carries every problem found in a config, not only the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
};

// YAML text with sections operator, noise, solver, bias_sweep, clt, rr,
// validate, output and a top-level seed. Throws ConfigError.
ExperimentConfig ParseConfigText(std::string_view text);
ExperimentConfig ParseConfig(const std::filesystem::path& path);

// Canonical YAML; ParseConfigText(SerializeConfig(c)) == c.
std::string SerializeConfig(const ExperimentConfig& config);

// 16 hex digits of FNV-1a over the canonical serialization, leaving out
// the output section.
std::string ConfigHash(const ExperimentConfig& config);

struct Problem {
  Operator op;
  std::optional<Game> game;
  NoiseModel noise;
};

Problem BuildProblem(const ExperimentConfig& config);
Algorithm ParseAlgorithm(const std::string& name);
Vector BuildInitialPoint(const SolverSection& solver, int dimension);
SolverConfig BuildSolverConfig(const ExperimentConfig& config, const Operator& op);

}  // namespace viergo
