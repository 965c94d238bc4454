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

#include "viergo/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "viergo/error.hpp"
#include "viergo/random.hpp"

namespace viergo {

const char* AlgorithmName(Algorithm algorithm) {
  return algorithm == Algorithm::kSgda ? "SGDA" : "SEG";
}

const char* OperatorKindName(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kLinear:
      return "linear";
    case OperatorKind::kQuadraticQuarticGame:
      return "quadratic_quartic_game";
    case OperatorKind::kLogisticGame:
      return "logistic_game";
    case OperatorKind::kQuasiBilinear:
      return "quasi_bilinear";
    case OperatorKind::kCustom:
      return "custom";
  }
  return "custom";
}

Operator::Operator(int dimension, Field field, OperatorParams params,
                   std::optional<Vector> solution, OperatorKind kind)
    : dimension_(dimension),
      field_(std::move(field)),
      params_(params),
      solution_(std::move(solution)),
      kind_(kind) {
  if (dimension_ < 1) Fail(ErrorCode::kInput, "operator dimension must be >= 1");
  if (!field_) Fail(ErrorCode::kInput, "operator field is empty");
  if (solution_ && solution_->size() != dimension_) {
    Fail(ErrorCode::kInput, "solution has the wrong dimension");
  }
  if (!params_.lipschitz && !params_.growth) {
    Fail(ErrorCode::kInput,
         "operator must declare a Lipschitz constant or a growth constant");
  }
}

Vector Operator::Evaluate(const Vector& x) const {
  Vector out(dimension_);
  EvaluateInto(x, out);
  return out;
}

void Operator::EvaluateInto(const Vector& x, Vector& out) const {
  if (x.size() != dimension_) {
    std::ostringstream msg;
    msg << "dimension mismatch: operator is " << dimension_
        << "-dimensional, got a vector of length " << x.size();
    Fail(ErrorCode::kInput, msg.str());
  }
  out.resize(dimension_);
  field_(x, out);
}

const Vector& Operator::RequireSolution(const char* context) const {
  if (!solution_) {
    Fail(ErrorCode::kPrecondition,
         std::string(context) + " requires an operator with a known solution");
  }
  return *solution_;
}

Operator Operator::WithParams(OperatorParams params) const {
  Operator copy = *this;
  copy.params_ = params;
  return copy;
}

Game::Game(int dim_min, int dim_max, Payoff payoff, Gradient grad_min,
           Gradient grad_max, OperatorParams params,
           std::optional<Vector> solution, OperatorKind kind)
    : dim_min_(dim_min),
      dim_max_(dim_max),
      payoff_(std::move(payoff)),
      grad_min_(std::move(grad_min)),
      grad_max_(std::move(grad_max)),
      op_(dim_min + dim_max,
          [gmin = grad_min_, gmax = grad_max_, n1 = dim_min, n2 = dim_max](
              const Vector& x, Vector& out) {
            gmin(x, out.head(n1));
            gmax(x, out.tail(n2));
            out.tail(n2) = -out.tail(n2);
          },
          params, std::move(solution), kind) {}

double Game::Value(const Vector& x) const {
  if (x.size() != dimension()) Fail(ErrorCode::kInput, "game point has the wrong dimension");
  return payoff_(x);
}

Vector Game::GradMin(const Vector& x) const {
  if (x.size() != dimension()) Fail(ErrorCode::kInput, "game point has the wrong dimension");
  Vector g(dim_min_);
  grad_min_(x, g);
  return g;
}

Vector Game::GradMax(const Vector& x) const {
  if (x.size() != dimension()) Fail(ErrorCode::kInput, "game point has the wrong dimension");
  Vector g(dim_max_);
  grad_max_(x, g);
  return g;
}

Operator MakeLinear(double mu, int d) {
  if (!(mu > 0.0)) Fail(ErrorCode::kInput, "linear operator needs mu > 0");
  if (d < 1) Fail(ErrorCode::kInput, "linear operator needs d >= 1");
  OperatorParams params;
  params.mu = mu;
  params.lambda = 0.0;
  params.lipschitz = mu;
  params.growth = mu;
  params.radius_bound = 0.0;
  return Operator(
      d, [mu](const Vector& x, Vector& out) { out = mu * x; }, params,
      Vector::Zero(d), OperatorKind::kLinear);
}

namespace {

Matrix RandomPositiveDefinite(int d, double floor, RandomStream& stream) {
  Matrix q(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) q(i, j) = stream.Gaussian();
  Matrix a = q.transpose() * q / static_cast<double>(d);
  a.diagonal().array() += floor;
  // Symmetrize exactly so that x'Ax has a symmetric gradient 2Ax.
  return 0.5 * (a + a.transpose());
}

double SpectralNorm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double MinEigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

struct QuarticMatrices {
  Matrix a1, a2, b1, b2, c;
};

}  // namespace

Game MakeQuadraticQuarticGame(int d, std::uint64_t seed, double conditioning) {
  QuadraticQuarticOptions options;
  options.conditioning = conditioning;
  return MakeQuadraticQuarticGame(d, seed, options);
}

Game MakeQuadraticQuarticGame(int d, std::uint64_t seed,
                              const QuadraticQuarticOptions& options) {
  if (d < 1) Fail(ErrorCode::kInput, "quadratic_quartic_game needs d >= 1");
  if (!(options.conditioning > 0.0)) {
    Fail(ErrorCode::kInput, "quadratic_quartic_game needs conditioning > 0");
  }
  if (!(options.quartic_scale >= 0.0) || !(options.local_radius > 0.0)) {
    Fail(ErrorCode::kInput, "quadratic_quartic_game options out of range");
  }

  RandomStream stream(StreamKey{seed, 0, StreamPhase::kAuxiliary});
  auto m = std::make_shared<QuarticMatrices>();
  m->a1 = RandomPositiveDefinite(d, options.conditioning, stream);
  m->a2 = RandomPositiveDefinite(d, options.conditioning, stream);
  m->b1 = options.quartic_scale * RandomPositiveDefinite(d, options.conditioning, stream);
  m->b2 = options.quartic_scale * RandomPositiveDefinite(d, options.conditioning, stream);
  m->c.resize(d, d);
  const double c_scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) m->c(i, j) = c_scale * stream.Gaussian();

  auto payoff = [m, d](const Vector& x) {
    const auto x1 = x.head(d);
    const auto x2 = x.tail(d);
    const double q1 = x1.dot(m->b1 * x1);
    const double q2 = x2.dot(m->b2 * x2);
    return x1.dot(m->a1 * x1) - x2.dot(m->a2 * x2) + q1 * q1 - q2 * q2 +
           x1.dot(m->c * x2);
  };
  auto grad_min = [m, d](const Vector& x, VectorRef out) {
    const auto x1 = x.head(d);
    const auto x2 = x.tail(d);
    const Vector b1x = m->b1 * x1;
    out.noalias() = 2.0 * (m->a1 * x1);
    out.noalias() += (4.0 * x1.dot(b1x)) * b1x;
    out.noalias() += m->c * x2;
  };
  auto grad_max = [m, d](const Vector& x, VectorRef out) {
    const auto x1 = x.head(d);
    const auto x2 = x.tail(d);
    const Vector b2x = m->b2 * x2;
    out.noalias() = -2.0 * (m->a2 * x2);
    out.noalias() -= (4.0 * x2.dot(b2x)) * b2x;
    out.noalias() += m->c.transpose() * x1;
  };

  // <F(x), x> = 2x1'A1x1 + 2x2'A2x2 + 4(x1'B1x1)^2 + 4(x2'B2x2)^2, so the
  // field is globally quasi-strongly monotone with mu = 2 min eig(A_i).
  Matrix jac(2 * d, 2 * d);
  jac << 2.0 * m->a1, m->c, -m->c.transpose(), 2.0 * m->a2;
  const double lin = SpectralNorm(jac);
  const double beta = std::max(SpectralNorm(m->b1), SpectralNorm(m->b2));
  const double r2 = options.local_radius * options.local_radius;
  OperatorParams params;
  params.mu = 2.0 * std::min(MinEigenvalue(m->a1), MinEigenvalue(m->a2));
  params.lambda = 0.0;
  // Jacobian of 4(x'Bx)Bx is 4(x'Bx)B + 8Bxx'B, bounded by 12 beta^2 r^2.
  params.lipschitz = lin + 12.0 * beta * beta * r2;
  params.growth = lin + 4.0 * beta * beta * r2;
  params.radius_bound = 0.0;

  // The payoff and the fused operator both live on the shared matrices.
  Game game(d, d, payoff, grad_min, grad_max, params, Vector::Zero(2 * d),
            OperatorKind::kQuadraticQuarticGame);
  return game;
}

namespace {

// log(1 + e^z) without overflow.
double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double LogisticPrime(double z) {
  const double s = Logistic(z);
  return s * (1.0 - s);
}

double LogisticPayoff(const Vector& x) {
  const double a = x[0], b = x[1];
  return Softplus(a) + Softplus(-2.0 * a) - Softplus(b) - Softplus(-2.0 * b) +
         0.1 * a * a - 0.1 * b * b + 0.1 * a * b;
}

void LogisticGradMin(const Vector& x, VectorRef out) {
  out[0] = Logistic(x[0]) - 2.0 * Logistic(-2.0 * x[0]) + 0.2 * x[0] + 0.1 * x[1];
}

void LogisticGradMax(const Vector& x, VectorRef out) {
  out[0] = -Logistic(x[1]) + 2.0 * Logistic(-2.0 * x[1]) - 0.2 * x[1] + 0.1 * x[0];
}

// F and its Jacobian for the logistic game; F2 = -d f / d x2.
void LogisticField(const Vector& x, Vector& f, Eigen::Matrix2d& jac) {
  Vector g(1);
  LogisticGradMin(x, g);
  f[0] = g[0];
  LogisticGradMax(x, g);
  f[1] = -g[0];
  jac(0, 0) = LogisticPrime(x[0]) + 4.0 * LogisticPrime(-2.0 * x[0]) + 0.2;
  jac(0, 1) = 0.1;
  jac(1, 0) = -0.1;
  jac(1, 1) = LogisticPrime(x[1]) + 4.0 * LogisticPrime(-2.0 * x[1]) + 0.2;
}

Vector SolveLogisticRoot() {
  Vector x = Vector::Zero(2);
  Vector f(2);
  Eigen::Matrix2d jac;
  LogisticField(x, f, jac);
  for (int iter = 0; iter < 200 && f.norm() > 1e-14; ++iter) {
    const Eigen::Vector2d step = jac.partialPivLu().solve(Eigen::Vector2d(f));
    double t = 1.0;
    const double f0 = f.norm();
    Vector trial(2);
    while (true) {
      trial = x - t * Vector(step);
      LogisticField(trial, f, jac);
      if (f.norm() < f0 || t < 1e-8) break;
      t *= 0.5;
    }
    x = trial;
  }
  if (f.norm() > 1e-12) Fail(ErrorCode::kDomain, "logistic game root finder did not converge");
  return x;
}

}  // namespace

Game MakeLogisticGame() {
  const Vector root = SolveLogisticRoot();
  // Jacobian is [[a1, 0.1], [-0.1, a2]] with a_i in [0.2, 1.45]: its
  // symmetric part is >= 0.2 I and its norm is <= 1.45 + 0.1.
  OperatorParams params;
  params.mu = 0.2;
  params.lambda = 0.0;
  params.lipschitz = 1.55;
  params.radius_bound = root.norm();
  // |F(x)| <= L |x - x*| <= L max(1, R) (1 + |x|).
  params.growth = 1.55 * std::max(1.0, params.radius_bound);
  return Game(1, 1, LogisticPayoff, LogisticGradMin, LogisticGradMax, params,
              root, OperatorKind::kLogisticGame);
}

Game MakeQuasiBilinear(double epsilon) {
  if (!(epsilon >= 0.0)) Fail(ErrorCode::kInput, "quasi_bilinear needs epsilon >= 0");
  auto payoff = [epsilon](const Vector& x) {
    return epsilon * x[0] * x[0] + x[0] * x[1] - epsilon * x[1] * x[1];
  };
  auto grad_min = [epsilon](const Vector& x, VectorRef out) {
    out[0] = 2.0 * epsilon * x[0] + x[1];
  };
  auto grad_max = [epsilon](const Vector& x, VectorRef out) {
    out[0] = x[0] - 2.0 * epsilon * x[1];
  };
  // F(x, y) = (2 eps x + y, -x + 2 eps y); <F(z), z> = 2 eps |z|^2 and the
  // Jacobian [[2eps, 1], [-1, 2eps]] has norm sqrt(4 eps^2 + 1).
  const double norm = std::sqrt(4.0 * epsilon * epsilon + 1.0);
  OperatorParams params;
  params.mu = 2.0 * epsilon;
  params.lambda = 0.0;
  params.lipschitz = norm;
  params.growth = norm;
  params.radius_bound = 0.0;
  return Game(1, 1, payoff, grad_min, grad_max, params, Vector::Zero(2),
              OperatorKind::kQuasiBilinear);
}

std::string AssumptionReport::Verdict() const {
  if (!any_violation()) return "no violation found";
  std::string out = "violation:";
  if (wqsm_violated) out += " weak-quasi-strong-monotonicity";
  if (growth_violated) out += " linear-growth";
  if (lipschitz_violated) out += " lipschitz";
  return out;
}

AssumptionReport VerifyAssumptions(const Operator& op, int n_samples,
                                   double radius, std::uint64_t seed) {
  const Vector& xs = op.RequireSolution("verify_assumptions");
  if (n_samples < 1) Fail(ErrorCode::kPrecondition, "verify_assumptions needs n_samples >= 1");
  if (!(radius > 0.0)) Fail(ErrorCode::kPrecondition, "verify_assumptions needs radius > 0");

  const int d = op.dimension();
  const OperatorParams& p = op.params();
  RandomStream stream(StreamKey{seed, 0, StreamPhase::kAuxiliary});

  AssumptionReport report;
  report.n_samples = n_samples;
  report.radius = radius;
  report.wqsm_min_slack = std::numeric_limits<double>::infinity();

  Vector x(d), fx(d), prev_x(d), prev_f(d), dir(d);
  for (int s = 0; s < n_samples; ++s) {
    stream.FillGaussian(dir, 1.0);
    const double n = dir.norm();
    const double r = radius * std::pow(stream.Uniform(), 1.0 / d);
    x = xs;
    if (n > 0.0) x += (r / n) * dir;
    op.EvaluateInto(x, fx);
    const Vector e = x - xs;
    const double slack = fx.dot(e) - p.mu * e.squaredNorm() + p.lambda;
    report.wqsm_min_slack = std::min(report.wqsm_min_slack, slack);
    report.growth_lower_bound =
        std::max(report.growth_lower_bound, fx.norm() / (1.0 + x.norm()));
    if (s > 0) {
      const double dx = (x - prev_x).norm();
      if (dx > 0.0) {
        report.lipschitz_lower_bound =
            std::max(report.lipschitz_lower_bound, (fx - prev_f).norm() / dx);
      }
    }
    prev_x = x;
    prev_f = fx;
  }

  constexpr double kSlackTolerance = 1e-10;
  constexpr double kRelativeTolerance = 1e-9;
  report.wqsm_violated = report.wqsm_min_slack < -kSlackTolerance;
  if (p.growth) {
    report.growth_violated =
        report.growth_lower_bound > *p.growth * (1.0 + kRelativeTolerance);
  }
  if (p.lipschitz) {
    report.lipschitz_violated =
        report.lipschitz_lower_bound > *p.lipschitz * (1.0 + kRelativeTolerance);
  }
  return report;
}

double GradientConsistency(const Game& game, const Vector& x, double h) {
  if (!(h > 0.0)) Fail(ErrorCode::kInput, "gradient_consistency needs h > 0");
  const Vector g1 = game.GradMin(x);
  const Vector g2 = game.GradMax(x);
  double worst = 0.0;
  Vector probe = x;
  for (int i = 0; i < game.dimension(); ++i) {
    probe[i] = x[i] + h;
    const double up = game.Value(probe);
    probe[i] = x[i] - h;
    const double down = game.Value(probe);
    probe[i] = x[i];
    const double fd = (up - down) / (2.0 * h);
    const double declared = i < game.dim_min() ? g1[i] : g2[i - game.dim_min()];
    worst = std::max(worst, std::abs(fd - declared));
  }
  return worst;
}

}  // namespace viergo
