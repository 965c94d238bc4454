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

#include "viergo/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "viergo/format.hpp"

namespace viergo {
namespace {

std::string JoinMessages(const std::vector<std::string>& messages) {
  std::string out = "invalid configuration:";
  for (const auto& m : messages) out += "\n  " + m;
  return out;
}

// Accumulates problems instead of stopping at the first one.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  void Error(const std::string& message) { errors_.push_back(message); }
  std::size_t errors() const { return errors_.size(); }

  bool Map(const YAML::Node& node, const std::string& path) {
    if (node.IsMap()) return true;
    Error(path + ": expected a mapping");
    return false;
  }

  void Keys(const YAML::Node& node, const std::string& path,
            const std::set<std::string>& allowed) {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        Error("unknown key '" + Join(path, key) + "'");
      }
    }
  }

  static std::string Join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  void Get(const YAML::Node& node, const std::string& path, const char* key,
           double& out) {
    const auto v = node[key];
    if (!v) return;
    if (!ParseDouble(v, out)) Error(Join(path, key) + ": expected a number");
  }

  void Get(const YAML::Node& node, const std::string& path, const char* key,
           std::int64_t& out) {
    const auto v = node[key];
    if (!v) return;
    if (!v.IsScalar() || !ParseInt(v.Scalar(), out)) {
      Error(Join(path, key) + ": expected an integer");
    }
  }

  void Get(const YAML::Node& node, const std::string& path, const char* key,
           int& out) {
    std::int64_t wide = out;
    const std::size_t before = errors_.size();
    Get(node, path, key, wide);
    if (errors_.size() != before) return;
    if (wide < INT32_MIN || wide > INT32_MAX) {
      Error(Join(path, key) + ": integer out of range");
      return;
    }
    out = static_cast<int>(wide);
  }

  void Get(const YAML::Node& node, const std::string& path, const char* key,
           std::uint64_t& out) {
    const auto v = node[key];
    if (!v) return;
    const std::string s = v.IsScalar() ? v.Scalar() : std::string();
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      Error(Join(path, key) + ": expected an unsigned 64-bit integer");
    }
  }

  void Get(const YAML::Node& node, const std::string& path, const char* key,
           bool& out) {
    const auto v = node[key];
    if (!v) return;
    try {
      out = v.as<bool>();
    } catch (const YAML::Exception&) {
      Error(Join(path, key) + ": expected true or false");
    }
  }

  void Get(const YAML::Node& node, const std::string& path, const char* key,
           std::string& out) {
    const auto v = node[key];
    if (!v) return;
    if (!v.IsScalar()) {
      Error(Join(path, key) + ": expected a string");
      return;
    }
    out = v.Scalar();
  }

  template <typename T>
  void GetList(const YAML::Node& node, const std::string& path, const char* key,
               std::vector<T>& out) {
    const auto v = node[key];
    if (!v) return;
    if (!v.IsSequence()) {
      Error(Join(path, key) + ": expected a list");
      return;
    }
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string where = Join(path, key) + "[" + std::to_string(i) + "]";
      T item{};
      if constexpr (std::is_same_v<T, double>) {
        if (!ParseDouble(v[i], item)) Error(where + ": expected a number");
      } else if constexpr (std::is_same_v<T, std::int64_t>) {
        if (!v[i].IsScalar() || !ParseInt(v[i].Scalar(), item)) {
          Error(where + ": expected an integer");
        }
      } else {
        if (!v[i].IsScalar()) {
          Error(where + ": expected a string");
        } else {
          item = v[i].Scalar();
        }
      }
      out.push_back(item);
    }
  }

 private:
  static bool ParseDouble(const YAML::Node& v, double& out) {
    if (!v.IsScalar()) return false;
    const std::string& s = v.Scalar();
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size();
  }

  static bool ParseInt(const std::string& s, std::int64_t& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size();
  }

  std::vector<std::string>& errors_;
};

const std::set<std::string> kOperatorKinds = {
    "linear", "quadratic_quartic_game", "logistic_game", "quasi_bilinear"};

bool KnownAlgorithm(const std::string& name) { return name == "SGDA" || name == "SEG"; }

bool ValidTestFunction(const std::string& name) {
  if (name == "game_value" || name == "squared_error") return true;
  const std::string prefix = "coordinate:";
  if (name.rfind(prefix, 0) != 0) return false;
  int index = -1;
  const char* first = name.data() + prefix.size();
  const char* last = name.data() + name.size();
  auto res = std::from_chars(first, last, index);
  return res.ec == std::errc() && res.ptr == last && index >= 0;
}

void ReadOperator(Reader& r, const YAML::Node& n, OperatorConfig& op) {
  if (!r.Map(n, "operator")) return;
  r.Keys(n, "operator",
         {"kind", "mu", "dim", "seed", "conditioning", "quartic_scale",
          "local_radius", "epsilon", "growth", "lipschitz"});
  r.Get(n, "operator", "kind", op.kind);
  r.Get(n, "operator", "mu", op.mu);
  r.Get(n, "operator", "dim", op.dim);
  r.Get(n, "operator", "seed", op.seed);
  r.Get(n, "operator", "conditioning", op.conditioning);
  r.Get(n, "operator", "quartic_scale", op.quartic_scale);
  r.Get(n, "operator", "local_radius", op.local_radius);
  r.Get(n, "operator", "epsilon", op.epsilon);
  for (const char* key : {"growth", "lipschitz"}) {
    if (!n[key]) continue;
    double v = 0.0;
    const std::size_t before = r.errors();
    r.Get(n, "operator", key, v);
    if (r.errors() != before) continue;
    (std::string(key) == "growth" ? op.growth : op.lipschitz) = v;
  }
}

void ReadSolver(Reader& r, const YAML::Node& n, SolverSection& s) {
  if (!r.Map(n, "solver")) return;
  r.Keys(n, "solver",
         {"algorithm", "gamma", "alpha", "horizon", "burn_in", "record_stride",
          "x0", "allow_inadmissible", "tail_fraction", "divergence_guard"});
  r.Get(n, "solver", "algorithm", s.algorithm);
  r.Get(n, "solver", "gamma", s.gamma);
  r.Get(n, "solver", "alpha", s.alpha);
  r.Get(n, "solver", "horizon", s.horizon);
  if (n["burn_in"]) {
    std::int64_t b = 0;
    r.Get(n, "solver", "burn_in", b);
    s.burn_in = b;
  }
  r.Get(n, "solver", "record_stride", s.record_stride);
  r.Get(n, "solver", "allow_inadmissible", s.allow_inadmissible);
  r.Get(n, "solver", "tail_fraction", s.tail_fraction);
  r.Get(n, "solver", "divergence_guard", s.divergence_guard);
  if (const auto x0 = n["x0"]) {
    if (x0.IsSequence()) {
      s.x0_mode = "values";
      r.GetList(n, "solver", "x0", s.x0_values);
    } else if (x0.IsScalar() && (x0.Scalar() == "zero" || x0.Scalar() == "ones")) {
      s.x0_mode = x0.Scalar();
    } else {
      double fill = 0.0;
      std::vector<std::string> local;
      Reader probe(local);
      probe.Get(n, "solver", "x0", fill);
      if (local.empty()) {
        s.x0_mode = "fill";
        s.x0_fill = fill;
      } else {
        r.Error("solver.x0: expected zero, ones, a number or a list of numbers");
      }
    }
  }
}

Operator WithDeclaredConstants(Operator op, const OperatorConfig& oc) {
  if (!oc.growth && !oc.lipschitz) return op;
  OperatorParams p = op.params();
  if (oc.growth) p.growth = *oc.growth;
  if (oc.lipschitz) p.lipschitz = *oc.lipschitz;
  return op.WithParams(p);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : Error(ErrorCode::kConfiguration, JoinMessages(messages)),
      messages_(std::move(messages)) {}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "SGDA") return Algorithm::kSgda;
  if (name == "SEG") return Algorithm::kSeg;
  Fail(ErrorCode::kConfiguration, "unknown algorithm '" + name + "' (expected SGDA or SEG)");
}

Problem BuildProblem(const ExperimentConfig& config) {
  const auto& oc = config.op;
  NoiseModel noise{NoiseKind::kGaussianIsotropic, config.noise.sigma};
  if (oc.kind == "linear") {
    return Problem{WithDeclaredConstants(MakeLinear(oc.mu, oc.dim), oc), std::nullopt, noise};
  }
  std::optional<Game> game;
  if (oc.kind == "quadratic_quartic_game") {
    game = MakeQuadraticQuarticGame(
        oc.dim, oc.seed,
        QuadraticQuarticOptions{oc.conditioning, oc.quartic_scale, oc.local_radius});
  } else if (oc.kind == "logistic_game") {
    game = MakeLogisticGame();
  } else if (oc.kind == "quasi_bilinear") {
    game = MakeQuasiBilinear(oc.epsilon);
  } else {
    Fail(ErrorCode::kConfiguration, "unknown operator kind '" + oc.kind + "'");
  }
  Operator op = game->op();
  return Problem{WithDeclaredConstants(std::move(op), oc), std::move(game), noise};
}

Vector BuildInitialPoint(const SolverSection& solver, int dimension) {
  if (solver.x0_mode == "zero") return Vector::Zero(dimension);
  if (solver.x0_mode == "ones") return Vector::Ones(dimension);
  if (solver.x0_mode == "fill") return Vector::Constant(dimension, solver.x0_fill);
  if (static_cast<int>(solver.x0_values.size()) != dimension) {
    Fail(ErrorCode::kConfiguration,
         "solver.x0 has " + std::to_string(solver.x0_values.size()) +
             " entries but the operator dimension is " + std::to_string(dimension));
  }
  return Eigen::Map<const Vector>(solver.x0_values.data(), dimension);
}

SolverConfig BuildSolverConfig(const ExperimentConfig& config, const Operator& op) {
  const auto& s = config.solver;
  SolverConfig out;
  out.algorithm = ParseAlgorithm(s.algorithm);
  out.gamma = s.gamma;
  out.alpha = s.alpha;
  out.horizon = s.horizon;
  out.burn_in = s.burn_in ? *s.burn_in : DefaultBurnIn(s.horizon);
  out.record_stride = s.record_stride;
  out.x0 = BuildInitialPoint(s, op.dimension());
  out.seed = config.seed;
  out.allow_inadmissible = s.allow_inadmissible;
  out.divergence_guard = s.divergence_guard;
  return out;
}

ExperimentConfig ParseConfigText(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError({std::string("YAML syntax error: ") + e.what()});
  }
  ExperimentConfig c;
  std::vector<std::string> errors;
  Reader r(errors);
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!r.Map(root, "<root>")) throw ConfigError(errors);

  r.Keys(root, "", {"seed", "operator", "noise", "solver", "bias_sweep", "clt",
                    "rr", "validate", "output"});
  r.Get(root, "", "seed", c.seed);
  if (root["operator"]) ReadOperator(r, root["operator"], c.op);
  if (const auto n = root["noise"]; n && r.Map(n, "noise")) {
    r.Keys(n, "noise", {"kind", "sigma"});
    r.Get(n, "noise", "kind", c.noise.kind);
    r.Get(n, "noise", "sigma", c.noise.sigma);
  }
  if (root["solver"]) ReadSolver(r, root["solver"], c.solver);
  if (const auto n = root["bias_sweep"]; n && r.Map(n, "bias_sweep")) {
    BiasSweepConfig b;
    r.Keys(n, "bias_sweep", {"gammas", "algorithms"});
    r.GetList(n, "bias_sweep", "gammas", b.gammas);
    r.GetList(n, "bias_sweep", "algorithms", b.algorithms);
    c.bias_sweep = b;
  }
  if (const auto n = root["clt"]; n && r.Map(n, "clt")) {
    CltConfig k;
    r.Keys(n, "clt", {"n_reps", "center_mode", "horizons", "gammas", "algorithms",
                      "test_function", "burn_in"});
    r.Get(n, "clt", "n_reps", k.n_reps);
    r.Get(n, "clt", "center_mode", k.center_mode);
    r.GetList(n, "clt", "horizons", k.horizons);
    r.GetList(n, "clt", "gammas", k.gammas);
    r.GetList(n, "clt", "algorithms", k.algorithms);
    r.Get(n, "clt", "test_function", k.test_function);
    r.Get(n, "clt", "burn_in", k.burn_in);
    c.clt = k;
  }
  if (const auto n = root["rr"]; n && r.Map(n, "rr")) {
    RrConfig k;
    r.Keys(n, "rr", {"coupling", "n_reps", "gammas"});
    r.Get(n, "rr", "coupling", k.coupling);
    r.Get(n, "rr", "n_reps", k.n_reps);
    r.GetList(n, "rr", "gammas", k.gammas);
    c.rr = k;
  }
  if (const auto n = root["validate"]; n && r.Map(n, "validate")) {
    ValidateConfig k;
    r.Keys(n, "validate", {"n_samples", "radius", "drift_probes", "drift_mc_samples"});
    r.Get(n, "validate", "n_samples", k.n_samples);
    r.Get(n, "validate", "radius", k.radius);
    r.Get(n, "validate", "drift_probes", k.drift_probes);
    r.Get(n, "validate", "drift_mc_samples", k.drift_mc_samples);
    c.validate = k;
  }
  if (const auto n = root["output"]; n && r.Map(n, "output")) {
    r.Keys(n, "output", {"dir", "emit_svg"});
    r.Get(n, "output", "dir", c.output.dir);
    r.Get(n, "output", "emit_svg", c.output.emit_svg);
  }

  // Semantic checks.
  const auto& s = c.solver;
  const bool operator_ok = kOperatorKinds.count(c.op.kind) > 0;
  if (!operator_ok) {
    r.Error("operator.kind: unknown operator kind '" + c.op.kind +
            "' (expected linear, quadratic_quartic_game, logistic_game or quasi_bilinear)");
  }
  if ((c.op.kind == "linear" || c.op.kind == "quadratic_quartic_game") && c.op.dim < 1) {
    r.Error("operator.dim: must be >= 1");
  }
  if (c.op.kind == "linear" && !(c.op.mu > 0.0)) r.Error("operator.mu: must be > 0");
  if (c.op.kind == "quadratic_quartic_game") {
    if (!(c.op.conditioning > 0.0)) r.Error("operator.conditioning: must be > 0");
    if (!(c.op.quartic_scale >= 0.0)) r.Error("operator.quartic_scale: must be >= 0");
    if (!(c.op.local_radius > 0.0)) r.Error("operator.local_radius: must be > 0");
  }
  if (c.op.kind == "quasi_bilinear" && !(c.op.epsilon >= 0.0)) {
    r.Error("operator.epsilon: must be >= 0");
  }
  if (c.op.growth && !(*c.op.growth > 0.0)) r.Error("operator.growth: must be > 0");
  if (c.op.lipschitz && !(*c.op.lipschitz > 0.0)) r.Error("operator.lipschitz: must be > 0");
  if (c.noise.kind != "gaussian_isotropic") {
    r.Error("noise.kind: unknown noise kind '" + c.noise.kind + "' (expected gaussian_isotropic)");
  }
  if (!(c.noise.sigma >= 0.0) || !std::isfinite(c.noise.sigma)) {
    r.Error("noise.sigma: must be finite and >= 0");
  }
  std::vector<std::string> algorithms;
  auto check_algorithm = [&](const std::string& path, const std::string& name) {
    if (!KnownAlgorithm(name)) {
      r.Error(path + ": unknown algorithm '" + name + "' (expected SGDA or SEG)");
      return;
    }
    if (std::find(algorithms.begin(), algorithms.end(), name) == algorithms.end()) {
      algorithms.push_back(name);
    }
  };
  check_algorithm("solver.algorithm", s.algorithm);
  if (!(s.gamma > 0.0) || !std::isfinite(s.gamma)) r.Error("solver.gamma: must be finite and > 0");
  if (!(s.alpha > 0.0 && s.alpha <= 1.0)) r.Error("solver.alpha: must lie in (0, 1]");
  if (s.horizon < 1) r.Error("solver.horizon: must be >= 1");
  if (s.burn_in && (*s.burn_in < 0 || *s.burn_in >= s.horizon)) {
    r.Error("solver.burn_in: must satisfy 0 <= burn_in < horizon");
  }
  if (s.record_stride < 1) r.Error("solver.record_stride: must be >= 1");
  if (!(s.tail_fraction > 0.0 && s.tail_fraction <= 0.5)) {
    r.Error("solver.tail_fraction: must lie in (0, 0.5]");
  }
  if (!(s.divergence_guard > 0.0)) r.Error("solver.divergence_guard: must be > 0");

  std::vector<double> gammas = {s.gamma};
  if (c.bias_sweep) {
    if (c.bias_sweep->gammas.empty()) r.Error("bias_sweep.gammas: must not be empty");
    for (std::size_t i = 0; i < c.bias_sweep->algorithms.size(); ++i) {
      check_algorithm("bias_sweep.algorithms[" + std::to_string(i) + "]",
                      c.bias_sweep->algorithms[i]);
    }
    gammas.insert(gammas.end(), c.bias_sweep->gammas.begin(), c.bias_sweep->gammas.end());
  }
  if (c.clt) {
    const auto& k = *c.clt;
    if (k.n_reps < 2) r.Error("clt.n_reps: must be >= 2");
    if (k.center_mode != "zero" && k.center_mode != "estimate") {
      r.Error("clt.center_mode: expected zero or estimate");
    }
    for (auto h : k.horizons) {
      if (h <= k.burn_in) r.Error("clt.horizons: every horizon must exceed clt.burn_in");
    }
    if (k.burn_in < 0) r.Error("clt.burn_in: must be >= 0");
    if (!ValidTestFunction(k.test_function)) {
      r.Error("clt.test_function: expected game_value, squared_error or coordinate:<i>");
    } else if (k.test_function == "game_value" && operator_ok && c.op.kind == "linear") {
      r.Error("clt.test_function: game_value needs a game operator");
    }
    for (std::size_t i = 0; i < k.algorithms.size(); ++i) {
      check_algorithm("clt.algorithms[" + std::to_string(i) + "]", k.algorithms[i]);
    }
    gammas.insert(gammas.end(), k.gammas.begin(), k.gammas.end());
  }
  if (c.rr) {
    const auto& k = *c.rr;
    if (k.coupling != "independent" && k.coupling != "common_random_numbers") {
      r.Error("rr.coupling: expected independent or common_random_numbers");
    }
    if (k.n_reps < 1) r.Error("rr.n_reps: must be >= 1");
    for (double g : k.gammas) {
      gammas.push_back(g);
      gammas.push_back(2.0 * g);
    }
    if (k.gammas.empty()) gammas.push_back(2.0 * s.gamma);
  }
  if (c.validate) {
    const auto& k = *c.validate;
    if (k.n_samples < 2) r.Error("validate.n_samples: must be >= 2");
    if (!(k.radius > 0.0)) r.Error("validate.radius: must be > 0");
    if (k.drift_probes < 0) r.Error("validate.drift_probes: must be >= 0");
    if (k.drift_mc_samples < 100) r.Error("validate.drift_mc_samples: must be >= 100");
  }
  for (double g : gammas) {
    if (!(g > 0.0) || !std::isfinite(g)) r.Error("step size " + FormatNumber(g) + " must be finite and > 0");
  }

  // Step-size gate, evaluated only once the operator itself is well formed.
  if (errors.empty() && !s.allow_inadmissible) {
    try {
      const Problem problem = BuildProblem(c);
      for (const auto& name : algorithms) {
        const double bound = MaxStepSize(ParseAlgorithm(name), problem.op.params());
        for (double g : gammas) {
          if (!(g < bound)) {
            r.Error("step size gamma=" + FormatNumber(g) + " is inadmissible for " + name +
                    ": the bound is gamma < " + FormatNumber(bound) +
                    (name == "SGDA" ? " (mu/G^2)" : " (1/(2mu+sqrt(3)L))") +
                    "; set solver.allow_inadmissible to override");
          }
        }
      }
    } catch (const viergo::Error& e) {
      r.Error(std::string("operator: ") + e.what());
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

ExperimentConfig ParseConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfigText(buf.str());
}

namespace {

void EmitNumberList(YAML::Emitter& e, const std::vector<double>& values) {
  e << YAML::Flow << YAML::BeginSeq;
  for (double v : values) e << FormatNumber(v);
  e << YAML::EndSeq;
}

}  // namespace

std::string SerializeConfig(const ExperimentConfig& c) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "seed" << YAML::Value << std::to_string(c.seed);

  e << YAML::Key << "operator" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << c.op.kind;
  e << YAML::Key << "mu" << YAML::Value << FormatNumber(c.op.mu);
  e << YAML::Key << "dim" << YAML::Value << std::to_string(c.op.dim);
  e << YAML::Key << "seed" << YAML::Value << std::to_string(c.op.seed);
  e << YAML::Key << "conditioning" << YAML::Value << FormatNumber(c.op.conditioning);
  e << YAML::Key << "quartic_scale" << YAML::Value << FormatNumber(c.op.quartic_scale);
  e << YAML::Key << "local_radius" << YAML::Value << FormatNumber(c.op.local_radius);
  e << YAML::Key << "epsilon" << YAML::Value << FormatNumber(c.op.epsilon);
  if (c.op.growth) e << YAML::Key << "growth" << YAML::Value << FormatNumber(*c.op.growth);
  if (c.op.lipschitz) {
    e << YAML::Key << "lipschitz" << YAML::Value << FormatNumber(*c.op.lipschitz);
  }
  e << YAML::EndMap;

  e << YAML::Key << "noise" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << c.noise.kind;
  e << YAML::Key << "sigma" << YAML::Value << FormatNumber(c.noise.sigma);
  e << YAML::EndMap;

  const auto& s = c.solver;
  e << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "algorithm" << YAML::Value << s.algorithm;
  e << YAML::Key << "gamma" << YAML::Value << FormatNumber(s.gamma);
  e << YAML::Key << "alpha" << YAML::Value << FormatNumber(s.alpha);
  e << YAML::Key << "horizon" << YAML::Value << std::to_string(s.horizon);
  if (s.burn_in) e << YAML::Key << "burn_in" << YAML::Value << std::to_string(*s.burn_in);
  e << YAML::Key << "record_stride" << YAML::Value << std::to_string(s.record_stride);
  e << YAML::Key << "x0" << YAML::Value;
  if (s.x0_mode == "values") {
    EmitNumberList(e, s.x0_values);
  } else if (s.x0_mode == "fill") {
    e << FormatNumber(s.x0_fill);
  } else {
    e << s.x0_mode;
  }
  e << YAML::Key << "allow_inadmissible" << YAML::Value << s.allow_inadmissible;
  e << YAML::Key << "tail_fraction" << YAML::Value << FormatNumber(s.tail_fraction);
  e << YAML::Key << "divergence_guard" << YAML::Value << FormatNumber(s.divergence_guard);
  e << YAML::EndMap;

  if (c.bias_sweep) {
    e << YAML::Key << "bias_sweep" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "gammas" << YAML::Value;
    EmitNumberList(e, c.bias_sweep->gammas);
    e << YAML::Key << "algorithms" << YAML::Value << YAML::Flow << c.bias_sweep->algorithms;
    e << YAML::EndMap;
  }
  if (c.clt) {
    const auto& k = *c.clt;
    e << YAML::Key << "clt" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "n_reps" << YAML::Value << std::to_string(k.n_reps);
    e << YAML::Key << "center_mode" << YAML::Value << k.center_mode;
    e << YAML::Key << "horizons" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto h : k.horizons) e << std::to_string(h);
    e << YAML::EndSeq;
    e << YAML::Key << "gammas" << YAML::Value;
    EmitNumberList(e, k.gammas);
    e << YAML::Key << "algorithms" << YAML::Value << YAML::Flow << k.algorithms;
    e << YAML::Key << "test_function" << YAML::Value << k.test_function;
    e << YAML::Key << "burn_in" << YAML::Value << std::to_string(k.burn_in);
    e << YAML::EndMap;
  }
  if (c.rr) {
    e << YAML::Key << "rr" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "coupling" << YAML::Value << c.rr->coupling;
    e << YAML::Key << "n_reps" << YAML::Value << std::to_string(c.rr->n_reps);
    e << YAML::Key << "gammas" << YAML::Value;
    EmitNumberList(e, c.rr->gammas);
    e << YAML::EndMap;
  }
  if (c.validate) {
    const auto& k = *c.validate;
    e << YAML::Key << "validate" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "n_samples" << YAML::Value << std::to_string(k.n_samples);
    e << YAML::Key << "radius" << YAML::Value << FormatNumber(k.radius);
    e << YAML::Key << "drift_probes" << YAML::Value << std::to_string(k.drift_probes);
    e << YAML::Key << "drift_mc_samples" << YAML::Value << std::to_string(k.drift_mc_samples);
    e << YAML::EndMap;
  }
  e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "dir" << YAML::Value << c.output.dir;
  e << YAML::Key << "emit_svg" << YAML::Value << c.output.emit_svg;
  e << YAML::EndMap;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

std::string ConfigHash(const ExperimentConfig& config) {
  // Where results land does not change what they are.
  ExperimentConfig keyed = config;
  keyed.output = OutputConfig{};
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : SerializeConfig(keyed)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static const char* kHex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = kHex[h & 0xF];
  return out;
}

}  // namespace viergo
