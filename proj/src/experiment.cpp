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

#include "viergo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include "json.hpp"

#include "viergo/diagnostics.hpp"
#include "viergo/ergodics.hpp"
#include "viergo/format.hpp"
#include "viergo/parallel.hpp"
#include "viergo/random.hpp"
#include "viergo/refinement.hpp"
#include "viergo/report.hpp"

namespace viergo {

using Json = nlohmann::ordered_json;

const char* CommandName(Command command) {
  switch (command) {
    case Command::kRun: return "run";
    case Command::kBiasSweep: return "bias-sweep";
    case Command::kClt: return "clt";
    case Command::kRr: return "rr";
    case Command::kValidate: return "validate";
  }
  return "unknown";
}

std::optional<Command> ParseCommand(std::string_view name) {
  for (auto c : {Command::kRun, Command::kBiasSweep, Command::kClt, Command::kRr,
                 Command::kValidate}) {
    if (name == CommandName(c)) return c;
  }
  return std::nullopt;
}

std::string Manifest::ToJson() const {
  Json j;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["exit_code"] = exit_code;
  j["message"] = message;
  j["files"] = files;
  j["summary"] = summary_json.empty() ? Json::object() : Json::parse(summary_json);
  return j.dump(2) + "\n";
}

namespace {

// JSON has no inf or nan; those become null.
Json Num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json VectorJson(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Num(v[i]));
  return out;
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// About 40 points per decade of 1..n, always including n.
std::vector<std::int64_t> LogGrid(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (int k = 0;; ++k) {
    const auto t = static_cast<std::int64_t>(std::llround(std::pow(10.0, k / 40.0)));
    if (t > n) break;
    if (out.empty() || t != out.back()) out.push_back(t);
  }
  if (out.empty() || out.back() != n) out.push_back(n);
  return out;
}

class Session {
 public:
  Session(Command command, const ExperimentConfig& config, int threads)
      : config_(config),
        threads_(std::max(1, threads)),
        dir_(config.output.dir),
        problem_(BuildProblem(config)),
        factory_(problem_.op, problem_.noise, config.seed) {
    manifest_.command = CommandName(command);
    manifest_.config_hash = ConfigHash(config);
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) Fail(ErrorCode::kIo, "cannot create output directory '" + dir_.string() + "'");
  }

  Manifest Finish(Json summary) {
    manifest_.summary_json = summary.dump();
    const auto path = dir_ / "manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
    out << manifest_.ToJson();
    return manifest_;
  }

  void Diverged(const std::string& message) {
    manifest_.exit_code = kExitDiverged;
    manifest_.message = message;
  }

  void Violation(const std::string& message) {
    manifest_.exit_code = kExitViolation;
    manifest_.message = message;
  }

  CsvTable Table(std::vector<std::string> header) const {
    CsvTable t;
    t.header = std::move(header);
    t.config_hash = manifest_.config_hash;
    return t;
  }

  void Csv(const std::string& name, const CsvTable& table, bool partial = false) {
    const auto path = OutputPath(dir_, name, partial);
    WriteCsv(path, table);
    manifest_.files.push_back(path.string());
  }

  void Plot(const std::string& name, PlotKind kind, const CsvTable& table,
            const std::string& title) {
    if (!config_.output.emit_svg) return;
    const auto path = dir_ / name;
    WriteSvg(kind, table, title, path);
    manifest_.files.push_back(path.string());
  }

  SolverConfig Solver() const { return BuildSolverConfig(config_, problem_.op); }

  const ExperimentConfig& config() const { return config_; }
  const Problem& problem() const { return problem_; }
  const OracleFactory& factory() const { return factory_; }
  int threads() const { return threads_; }

 private:
  const ExperimentConfig& config_;
  int threads_;
  std::filesystem::path dir_;
  Problem problem_;
  OracleFactory factory_;
  Manifest manifest_;
};

std::string DivergenceMessage(const Divergence& d) {
  return "diverged at iteration " + std::to_string(d.iteration) + " (|x| = " +
         FormatNumber(d.norm) + ")";
}

void AppendLogTrajectory(CsvTable& table, const std::vector<std::vector<double>>& series) {
  std::int64_t n = 0;
  for (const auto& s : series) n = std::max<std::int64_t>(n, static_cast<std::int64_t>(s.size()));
  if (n == 0) return;
  for (auto t : LogGrid(n)) {
    CsvRow row{std::to_string(t)};
    for (const auto& s : series) {
      row.push_back(t <= static_cast<std::int64_t>(s.size()) ? FormatNumber(s[t - 1]) : "nan");
    }
    table.rows.push_back(std::move(row));
  }
}

Json EnvelopeJson(const SolverConfig& sc, const Problem& p, const Trajectory& traj) {
  try {
    const auto env = MakeConvergenceEnvelope(sc.algorithm, p.op.params(), sc.gamma, sc.alpha,
                                             p.noise.SecondMomentBound(p.op.dimension()));
    const double init = (sc.x0 - *traj.reference).squaredNorm();
    return Json{{"c1", Num(env.c1)},
                {"c2", Num(env.c2)},
                {"bound_at_horizon", Num(env.Bound(traj.steps_run, init))}};
  } catch (const Error&) {
    return Json(nullptr);  // inadmissible step size: no guarantee to report
  }
}

Manifest ExecuteRun(Session& s) {
  const SolverConfig sc = s.Solver();
  StochasticOracle oracle = s.factory().Make(0);
  const Trajectory traj = Run(sc, oracle);
  const bool partial = traj.diverged();

  CsvTable table = s.Table({"t", "sq_err"});
  AppendLogTrajectory(table, {traj.sq_err});
  s.Csv("trajectory.csv", table, partial);

  Json summary;
  summary["algorithm"] = AlgorithmName(sc.algorithm);
  summary["gamma"] = sc.gamma;
  summary["alpha"] = sc.alpha;
  summary["horizon"] = sc.horizon;
  summary["burn_in"] = sc.burn_in;
  summary["steps_run"] = traj.steps_run;
  summary["oracle_queries"] = oracle.queries();
  summary["max_step_size"] = Num(MaxStepSize(sc.algorithm, s.problem().op.params()));
  if (partial) {
    summary["divergence"] = {{"iteration", traj.divergence->iteration},
                             {"norm", Num(traj.divergence->norm)}};
    s.Diverged(DivergenceMessage(*traj.divergence));
    return s.Finish(summary);
  }
  const MseEstimate mse = SteadyStateMse(traj, s.config().solver.tail_fraction);
  summary["steady_state_mse"] = {{"mse", Num(mse.mse)},
                                 {"ci_halfwidth", Num(mse.ci_halfwidth)},
                                 {"n", mse.n}};
  summary["cesaro_mean"] = VectorJson(traj.CesaroMean());
  if (traj.count >= 100) {
    const BiasEstimate bias = EstimateBias(traj);
    summary["bias"] = {{"norm", Num(bias.bias_norm)}, {"ci_halfwidth", Num(bias.ci_halfwidth)}};
  }
  summary["envelope"] = EnvelopeJson(sc, s.problem(), traj);
  if (s.problem().op.kind() == OperatorKind::kLinear) {
    const double v = AnalyticStationaryVarianceLinear(
        sc.algorithm, s.config().op.mu, s.problem().noise.sigma, sc.gamma, sc.alpha);
    summary["analytic_stationary_mse"] = Num(v * s.problem().op.dimension());
  }
  s.Plot("trajectory.svg", PlotKind::kTrajectoryLogLog, table,
         std::string(AlgorithmName(sc.algorithm)) + " squared error, gamma=" +
             FormatNumber(sc.gamma));
  return s.Finish(summary);
}

struct SweepPoint {
  double gamma = 0.0;
  MseEstimate mse;
  GapPoint gap;
  std::optional<BiasEstimate> bias;
  std::vector<double> sq_err;
  std::optional<Divergence> divergence;
};

Manifest ExecuteBiasSweep(Session& s) {
  const auto& cfg = s.config();
  if (!cfg.bias_sweep) Fail(ErrorCode::kConfiguration, "bias-sweep needs a bias_sweep section");
  std::vector<std::string> algorithms = cfg.bias_sweep->algorithms;
  if (algorithms.empty()) algorithms.push_back(cfg.solver.algorithm);
  const auto& gammas = cfg.bias_sweep->gammas;
  const TestFunction gap = RestrictedGapFunction(s.problem().op);
  const Observer obs = gap.AsObserver();

  Json summary;
  summary["algorithms"] = Json::array();
  for (const auto& name : algorithms) {
    SolverConfig base = s.Solver();
    base.algorithm = ParseAlgorithm(name);
    std::vector<SweepPoint> points(gammas.size());
    ParallelFor(gammas.size(), s.threads(), [&](std::size_t j) {
      SolverConfig sc = base;
      sc.gamma = gammas[j];
      sc.record_stride = sc.horizon;
      const Trajectory t = RunChain(sc, s.factory(), j, std::span<const Observer>(&obs, 1));
      SweepPoint& p = points[j];
      p.gamma = gammas[j];
      p.sq_err = t.sq_err;
      if (t.diverged()) {
        p.divergence = t.divergence;
        return;
      }
      p.mse = SteadyStateMse(t, cfg.solver.tail_fraction);
      const ErgodicReport r = Analyze(t, gap);
      p.gap = GapPoint{gammas[j], r.cesaro,
                       kSigmaSlack * std::sqrt(r.long_run_variance /
                                               static_cast<double>(r.n_effective))};
      if (t.count >= 100) p.bias = EstimateBias(t);
    });

    const std::string tag = Lower(name);
    const auto diverged = std::find_if(points.begin(), points.end(),
                                       [](const SweepPoint& p) { return p.divergence.has_value(); });
    const bool partial = diverged != points.end();

    CsvTable mse = s.Table({"gamma", "mse", "ci_halfwidth", "bias_norm", "bias_ci"});
    CsvTable gaps = s.Table({"gamma", "avg_gap", "ci"});
    std::vector<std::string> traj_header{"t"};
    std::vector<std::vector<double>> series;
    Json rows = Json::array();
    for (const auto& p : points) {
      traj_header.push_back("gamma=" + FormatNumber(p.gamma));
      series.push_back(p.sq_err);
      if (p.divergence) continue;
      const double bn = p.bias ? p.bias->bias_norm : std::nan("");
      const double bc = p.bias ? p.bias->ci_halfwidth : std::nan("");
      mse.rows.push_back(NumericRow({p.gamma, p.mse.mse, p.mse.ci_halfwidth, bn, bc}));
      gaps.rows.push_back(NumericRow({p.gamma, p.gap.avg_gap, p.gap.ci_halfwidth}));
      rows.push_back({{"gamma", p.gamma},
                      {"mse", Num(p.mse.mse)},
                      {"mse_ci", Num(p.mse.ci_halfwidth)},
                      {"avg_gap", Num(p.gap.avg_gap)},
                      {"gap_ci", Num(p.gap.ci_halfwidth)},
                      {"bias_norm", Num(bn)},
                      {"bias_ci", Num(bc)}});
    }
    CsvTable traj = s.Table(traj_header);
    AppendLogTrajectory(traj, series);
    s.Csv("bias_sweep_" + tag + ".csv", mse, partial);
    s.Csv("gap_sweep_" + tag + ".csv", gaps, partial);
    s.Csv("trajectory_" + tag + ".csv", traj, partial);

    Json entry{{"algorithm", name}, {"points", rows}};
    if (partial) {
      entry["divergence"] = {{"gamma", diverged->gamma},
                             {"iteration", diverged->divergence->iteration}};
      s.Diverged(name + " at gamma=" + FormatNumber(diverged->gamma) + " " +
                 DivergenceMessage(*diverged->divergence));
    } else {
      // Order by decreasing step size and check the mse falls with gamma.
      std::vector<const SweepPoint*> sorted;
      for (const auto& p : points) sorted.push_back(&p);
      std::sort(sorted.begin(), sorted.end(),
                [](auto* a, auto* b) { return a->gamma > b->gamma; });
      bool decreasing = true, separated = true;
      for (std::size_t i = 1; i < sorted.size(); ++i) {
        const auto& a = sorted[i - 1]->mse;
        const auto& b = sorted[i]->mse;
        decreasing = decreasing && b.mse < a.mse;
        separated = separated && (a.mse - b.mse) > (a.ci_halfwidth + b.ci_halfwidth);
      }
      entry["mse_decreasing"] = decreasing;
      entry["mse_ci_separated"] = separated;
      s.Plot("trajectory_" + tag + ".svg", PlotKind::kTrajectoryLogLog, traj,
             name + " squared error by step size");
    }
    summary["algorithms"].push_back(entry);
  }
  return s.Finish(summary);
}

TestFunction BuildTestFunction(const Session& s, const std::string& name) {
  if (name == "game_value") {
    if (!s.problem().game) Fail(ErrorCode::kConfiguration, "game_value needs a game operator");
    return TestFunction::GameValue(*s.problem().game);
  }
  if (name == "squared_error") {
    return TestFunction::SquaredError(s.problem().op.RequireSolution("squared_error"));
  }
  const int index = std::stoi(name.substr(std::string("coordinate:").size()));
  if (index >= s.problem().op.dimension()) {
    Fail(ErrorCode::kConfiguration, "clt.test_function coordinate index out of range");
  }
  return TestFunction::Coordinate(index);
}

Manifest ExecuteClt(Session& s) {
  const auto& cfg = s.config();
  if (!cfg.clt) Fail(ErrorCode::kConfiguration, "clt needs a clt section");
  const CltConfig& k = *cfg.clt;
  std::vector<std::string> algorithms = k.algorithms;
  if (algorithms.empty()) algorithms.push_back(cfg.solver.algorithm);
  std::vector<double> gammas = k.gammas;
  if (gammas.empty()) gammas.push_back(cfg.solver.gamma);
  std::vector<std::int64_t> horizons = k.horizons;
  if (horizons.empty()) horizons.push_back(cfg.solver.horizon);
  const TestFunction f = BuildTestFunction(s, k.test_function);

  Json summary;
  summary["test_function"] = f.name();
  summary["center_mode"] = k.center_mode;
  summary["settings"] = Json::array();
  std::uint64_t setting = 0;
  for (const auto& name : algorithms) {
    for (double gamma : gammas) {
      for (auto horizon : horizons) {
        ++setting;
        SolverConfig sc = s.Solver();
        sc.algorithm = ParseAlgorithm(name);
        sc.gamma = gamma;
        sc.horizon = horizon;
        sc.burn_in = k.burn_in;
        // Each setting gets its own family of replicate streams.
        const OracleFactory factory(s.problem().op, s.problem().noise,
                                    Mix64(cfg.seed ^ Mix64(setting)));
        double center = 0.0;
        if (k.center_mode == "estimate") {
          SolverConfig pilot = sc;
          pilot.horizon = std::max(horizon, cfg.solver.horizon);
          pilot.burn_in = DefaultBurnIn(pilot.horizon);
          pilot.record_stride = pilot.horizon;
          const Observer obs = f.AsObserver();
          const Trajectory t = RunChain(pilot, factory, static_cast<std::uint64_t>(k.n_reps),
                                        std::span<const Observer>(&obs, 1));
          if (t.diverged()) Fail(ErrorCode::kDomain, "clt pilot chain " + DivergenceMessage(*t.divergence));
          center = CesaroMean(t, f);
        }
        const std::string file = "clt_" + Lower(name) + "_gamma" + FormatNumber(gamma) + "_n" +
                                 std::to_string(horizon) + ".csv";
        std::vector<double> values;
        try {
          values = CltReplicates(sc, factory, f, k.n_reps, center, s.threads());
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kDomain) throw;
          s.Csv(file, s.Table({"rep_index", "value"}), true);
          s.Diverged(name + " gamma=" + FormatNumber(gamma) + ": " + e.what());
          summary["settings"].push_back({{"algorithm", name},
                                         {"gamma", gamma},
                                         {"horizon", horizon},
                                         {"diverged", true}});
          return s.Finish(summary);
        }
        CsvTable table = s.Table({"rep_index", "value"});
        for (std::size_t r = 0; r < values.size(); ++r) {
          table.rows.push_back({std::to_string(r), FormatNumber(values[r])});
        }
        s.Csv(file, table);
        const SampleSummary st = Summarize(values);
        summary["settings"].push_back({{"algorithm", name},
                                       {"gamma", gamma},
                                       {"horizon", horizon},
                                       {"center", Num(center)},
                                       {"file", file},
                                       {"mean", Num(st.mean)},
                                       {"variance", Num(st.variance)},
                                       {"stddev", Num(st.stddev)},
                                       {"skewness", Num(st.skewness)},
                                       {"excess_kurtosis", Num(st.excess_kurtosis)}});
        s.Plot(file.substr(0, file.size() - 4) + ".svg", PlotKind::kHistogram, table,
               name + " normalized sums, gamma=" + FormatNumber(gamma) +
                   ", N=" + std::to_string(horizon));
      }
    }
  }
  return s.Finish(summary);
}

Manifest ExecuteRr(Session& s) {
  const auto& cfg = s.config();
  const RrConfig k = cfg.rr.value_or(RrConfig{});
  std::vector<double> gammas = k.gammas;
  if (gammas.empty()) gammas.push_back(cfg.solver.gamma);
  const Coupling coupling =
      k.coupling == "common_random_numbers" ? Coupling::kCommonRandomNumbers : Coupling::kIndependent;

  CsvTable table = s.Table({"gamma", "err_gamma", "err_2gamma", "err_rr", "ci_halfwidth"});
  Json summary;
  summary["coupling"] = CouplingName(coupling);
  summary["n_reps"] = k.n_reps;
  summary["points"] = Json::array();
  for (double gamma : gammas) {
    SolverConfig base = s.Solver();
    base.gamma = gamma;
    RRSummary r;
    try {
      r = RrReplicates(base, s.factory(), coupling, k.n_reps, s.threads());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDomain) throw;
      s.Csv("rr.csv", table, true);
      s.Diverged("gamma=" + FormatNumber(gamma) + ": " + e.what());
      return s.Finish(summary);
    }
    const double ci = kSigmaSlack * r.err_rr_se;
    table.rows.push_back(NumericRow({gamma, r.err_gamma, r.err_2gamma, r.err_rr, ci}));
    summary["points"].push_back({{"gamma", gamma},
                                 {"err_gamma", Num(r.err_gamma)},
                                 {"err_gamma_se", Num(r.err_gamma_se)},
                                 {"err_2gamma", Num(r.err_2gamma)},
                                 {"err_2gamma_se", Num(r.err_2gamma_se)},
                                 {"err_rr", Num(r.err_rr)},
                                 {"err_rr_se", Num(r.err_rr_se)},
                                 {"rr_ratio", Num(r.err_rr / r.err_gamma)}});
  }
  s.Csv("rr.csv", table);
  s.Plot("rr.svg", PlotKind::kBarErrors, table, "Richardson-Romberg errors");
  return s.Finish(summary);
}

std::vector<Vector> BallProbes(const Vector& center, double radius, int n, std::uint64_t seed) {
  RandomStream rng(StreamKey{seed, 1, StreamPhase::kAuxiliary});
  const auto d = center.size();
  std::vector<Vector> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vector dir(d);
    rng.FillGaussian(dir, 1.0);
    const double norm = dir.norm();
    const double r = radius * std::pow(rng.Uniform(), 1.0 / static_cast<double>(d));
    out.push_back(center + (norm > 0.0 ? dir * (r / norm) : dir));
  }
  return out;
}

Manifest ExecuteValidate(Session& s) {
  const auto& cfg = s.config();
  const ValidateConfig k = cfg.validate.value_or(ValidateConfig{});
  const Operator& op = s.problem().op;
  const OperatorParams& params = op.params();
  const AssumptionReport report = VerifyAssumptions(op, k.n_samples, k.radius, cfg.seed);

  CsvTable checks = s.Table({"check", "empirical", "declared", "violated"});
  auto declared = [](const std::optional<double>& v) { return v ? FormatNumber(*v) : "nan"; };
  checks.rows.push_back({"wqsm_min_slack", FormatNumber(report.wqsm_min_slack), "0",
                         report.wqsm_violated ? "1" : "0"});
  checks.rows.push_back({"growth", FormatNumber(report.growth_lower_bound),
                         declared(params.growth), report.growth_violated ? "1" : "0"});
  checks.rows.push_back({"lipschitz", FormatNumber(report.lipschitz_lower_bound),
                         declared(params.lipschitz), report.lipschitz_violated ? "1" : "0"});
  s.Csv("assumptions.csv", checks);

  Json summary;
  summary["verdict"] = report.Verdict();
  summary["n_samples"] = k.n_samples;
  summary["radius"] = k.radius;
  summary["wqsm_min_slack"] = Num(report.wqsm_min_slack);
  summary["growth_lower_bound"] = Num(report.growth_lower_bound);
  summary["lipschitz_lower_bound"] = Num(report.lipschitz_lower_bound);

  const Vector& xstar = op.RequireSolution("validate");
  {
    StochasticOracle probe = s.factory().Make(std::numeric_limits<std::uint32_t>::max());
    const NoiseMoments m = EmpiricalNoiseMoments(probe, xstar, std::max(2, k.n_samples));
    summary["noise"] = {{"mean_norm", Num(m.mean_norm)},
                        {"second_moment", Num(m.second_moment)},
                        {"second_moment_bound", Num(s.problem().noise.SecondMomentBound(op.dimension()))},
                        {"fourth_moment", Num(m.fourth_moment)}};
  }

  const SolverConfig sc = s.Solver();
  bool drift_violation = false;
  if (k.drift_probes > 0) {
    const auto probes = BallProbes(xstar, k.radius, k.drift_probes, cfg.seed);
    std::vector<DriftProbe> drift;
    try {
      SolverConfig gated = sc;
      gated.allow_inadmissible = false;
      drift = DriftCheck(s.factory(), gated, probes, k.drift_mc_samples, s.threads());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kConfiguration) throw;
      summary["drift"] = {{"skipped", e.what()}};
    }
    if (!drift.empty()) {
      CsvTable table = s.Table({"x_index", "lhs", "rhs", "margin_sigmas"});
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < drift.size(); ++i) {
        table.rows.push_back({std::to_string(i), FormatNumber(drift[i].lhs),
                              FormatNumber(drift[i].rhs), FormatNumber(drift[i].margin_sigmas)});
        worst = std::min(worst, drift[i].margin_sigmas);
      }
      drift_violation = worst < -kSigmaSlack;
      s.Csv("drift.csv", table);
      summary["drift"] = {{"probes", drift.size()},
                          {"min_margin_sigmas", Num(worst)},
                          {"violated", drift_violation}};
    }
  }

  StochasticOracle oracle = s.factory().Make(0);
  const Trajectory traj = Run(sc, oracle);
  if (traj.diverged()) {
    s.Csv("moments.csv", s.Table({"k", "estimate"}), true);
    s.Diverged("moment chain " + DivergenceMessage(*traj.divergence));
    return s.Finish(summary);
  }
  CsvTable moments = s.Table({"k", "estimate"});
  Json mj = Json::array();
  for (int order = 1; order <= 4; ++order) {
    const double m = MomentEstimate(traj, order);
    moments.rows.push_back({std::to_string(order), FormatNumber(m)});
    mj.push_back(Num(m));
  }
  s.Csv("moments.csv", moments);
  summary["moments"] = mj;

  if (report.any_violation() || drift_violation) {
    std::string message = report.any_violation() ? report.Verdict() : std::string();
    if (drift_violation) message += std::string(message.empty() ? "" : "; ") + "drift inequality violated";
    s.Violation(message);
  }
  return s.Finish(summary);
}

}  // namespace

Manifest Execute(Command command, const ExperimentConfig& config, int threads) {
  Session session(command, config, threads);
  switch (command) {
    case Command::kRun: return ExecuteRun(session);
    case Command::kBiasSweep: return ExecuteBiasSweep(session);
    case Command::kClt: return ExecuteClt(session);
    case Command::kRr: return ExecuteRr(session);
    case Command::kValidate: return ExecuteValidate(session);
  }
  Fail(ErrorCode::kUnsupported, "unknown command");
}

}  // namespace viergo
