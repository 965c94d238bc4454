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
#include <memory>
#include <optional>
#include <string>

#include "viergo/types.hpp"

namespace viergo {

enum class OperatorKind {
  kLinear,
  kQuadraticQuarticGame,
  kLogisticGame,
  kQuasiBilinear,
  kCustom,
};

const char* OperatorKindName(OperatorKind kind);

// Regularity constants declared for an operator. `mu` and `lambda` are the
// weak quasi-strong monotonicity pair, `lipschitz` is needed by SEG and
// `growth` by SGDA, `radius_bound` bounds the norm of the stored solution.
struct OperatorParams {
  double mu = 0.0;
  double lambda = 0.0;
  std::optional<double> lipschitz;
  std::optional<double> growth;
  double radius_bound = 0.0;
};

// A deterministic vector field F on R^d with declared regularity constants
// and an optional known root. Immutable after construction; copies share the
// underlying field.
class Operator {
 public:
  using Field = std::function<void(const Vector& x, Vector& out)>;

  Operator(int dimension, Field field, OperatorParams params,
           std::optional<Vector> solution, OperatorKind kind);

  int dimension() const { return dimension_; }
  const OperatorParams& params() const { return params_; }
  const std::optional<Vector>& solution() const { return solution_; }
  OperatorKind kind() const { return kind_; }

  Vector Evaluate(const Vector& x) const;

  // Writes F(x) into `out`, resizing it if needed. Hot-path variant used by
  // the solvers to avoid per-step allocation.
  void EvaluateInto(const Vector& x, Vector& out) const;

  const Vector& RequireSolution(const char* context) const;

  Operator WithParams(OperatorParams params) const;

 private:
  int dimension_;
  Field field_;
  OperatorParams params_;
  std::optional<Vector> solution_;
  OperatorKind kind_;
};

// Two-player zero-sum game min_{x1} max_{x2} f(x1, x2). Points are joint
// vectors (x1, x2) of length dim_min + dim_max. The induced operator is
// F = (grad_{x1} f, -grad_{x2} f).
class Game {
 public:
  using Payoff = std::function<double(const Vector& x)>;
  using Gradient = std::function<void(const Vector& x, VectorRef out)>;

  Game(int dim_min, int dim_max, Payoff payoff, Gradient grad_min,
       Gradient grad_max, OperatorParams params, std::optional<Vector> solution,
       OperatorKind kind);

  int dim_min() const { return dim_min_; }
  int dim_max() const { return dim_max_; }
  int dimension() const { return dim_min_ + dim_max_; }

  double Value(const Vector& x) const;
  Vector GradMin(const Vector& x) const;
  Vector GradMax(const Vector& x) const;

  const Operator& op() const { return op_; }

 private:
  int dim_min_;
  int dim_max_;
  Payoff payoff_;
  Gradient grad_min_;
  Gradient grad_max_;
  Operator op_;
};

// F(x) = mu * x on R^d with root 0.
Operator MakeLinear(double mu, int d);

struct QuadraticQuarticOptions {
  // Floor added to the diagonal of every random positive definite matrix.
  double conditioning = 0.1;
  // Multiplier on the quartic matrices B1, B2.
  double quartic_scale = 0.25;
  // Radius of the ball around 0 on which the declared L and G hold. The
  // quartic terms make the field neither globally Lipschitz nor of linear
  // growth, so both constants are local.
  double local_radius = 3.0;
};

// f(x1, x2) = x1'A1x1 - x2'A2x2 + (x1'B1x1)^2 - (x2'B2x2)^2 + x1'Cx2 with
// x1, x2 in R^d. A = Q'Q/d + c*I for Gaussian Q, B likewise times the
// quartic scale, and C has i.i.d. N(0, 1/d) entries. Every matrix is a
// deterministic function of `seed`.
Game MakeQuadraticQuarticGame(int d, std::uint64_t seed,
                              double conditioning = 0.1);
Game MakeQuadraticQuarticGame(int d, std::uint64_t seed,
                              const QuadraticQuarticOptions& options);

// f(x1, x2) = h(x1) + h(-2x1) - h(x2) - h(-2x2) + 0.1x1^2 - 0.1x2^2
// + 0.1x1x2 with h(z) = log(1 + e^z). The root is located by damped Newton
// at construction.
Game MakeLogisticGame();

// f(x, y) = eps*x^2 + x*y - eps*y^2.
Game MakeQuasiBilinear(double epsilon);

struct AssumptionReport {
  int n_samples = 0;
  double radius = 0.0;
  // min over samples of <F(x), x - x*> - mu |x - x*|^2 + lambda.
  double wqsm_min_slack = 0.0;
  // max of |F(x)| / (1 + |x|), a lower bound on any valid G.
  double growth_lower_bound = 0.0;
  // max of |F(x) - F(y)| / |x - y| over sample pairs, a lower bound on L.
  double lipschitz_lower_bound = 0.0;
  bool wqsm_violated = false;
  bool growth_violated = false;
  bool lipschitz_violated = false;

  bool any_violation() const {
    return wqsm_violated || growth_violated || lipschitz_violated;
  }
  // "no violation found" or a list of the violated assumptions. Sampling
  // never proves that an assumption holds.
  std::string Verdict() const;
};

AssumptionReport VerifyAssumptions(const Operator& op, int n_samples,
                                   double radius, std::uint64_t seed);

// Worst absolute difference between the declared partial gradients and
// central differences of the payoff with step h.
double GradientConsistency(const Game& game, const Vector& x, double h);

}  // namespace viergo
