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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path kTmp = VIERGO_TEST_TMP;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome Cli(const std::string& args, const std::string& env = "") {
  fs::create_directories(kTmp);
  const fs::path out = kTmp / "stdout.txt", err = kTmp / "stderr.txt";
  const std::string cmd = env + " \"" VIERGO_CLI_PATH "\" " + args + " >\"" + out.string() +
                          "\" 2>\"" + err.string() + "\"";
  const int raw = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  o.out = Slurp(out);
  o.err = Slurp(err);
  return o;
}

fs::path WriteConfig(const std::string& name, const std::string& text) {
  fs::create_directories(kTmp);
  const fs::path p = kTmp / name;
  std::ofstream(p) << text;
  return p;
}

const char* kLinear =
    "seed: 1\n"
    "operator: {kind: linear, mu: 1, dim: 1}\n"
    "noise: {sigma: 0.5}\n"
    "solver: {gamma: 0.1, horizon: 20000}\n"
    "rr: {n_reps: 4, gammas: [0.05, 0.1]}\n"
    "validate: {n_samples: 200, radius: 2, drift_probes: 4, drift_mc_samples: 500}\n";

}  // namespace

TEST_CASE("usage errors exit with the generic status") {
  CHECK(Cli("").code == 1);
  CHECK(Cli("run").code == 1);  // --config is required
  CHECK(Cli("frobnicate --config x.yaml").code == 1);
  CHECK(Cli("--help").code == 0);
}

TEST_CASE("bad configuration is reported on stderr") {
  const fs::path cfg = WriteConfig("bad.yaml", "solver: {algorithm: OGDA}\n");
  const Outcome o = Cli("run --config \"" + cfg.string() + "\"");
  CHECK(o.code == 1);
  CHECK(o.err.find("unknown algorithm 'OGDA'") != std::string::npos);
  CHECK(Cli("run --config /nonexistent.yaml").code == 1);
}

TEST_CASE("run honours --out, --seed and --svg") {
  const fs::path cfg = WriteConfig("linear.yaml", kLinear);
  const fs::path a = kTmp / "run_a", b = kTmp / "run_b", c = kTmp / "run_c";
  for (const auto& d : {a, b, c}) fs::remove_all(d);
  const Outcome oa = Cli("run --config \"" + cfg.string() + "\" --out \"" + a.string() + "\" --svg");
  REQUIRE(oa.code == 0);
  CHECK(oa.out.find("\"config_hash\"") != std::string::npos);
  CHECK(fs::exists(a / "trajectory.csv"));
  CHECK(fs::exists(a / "trajectory.svg"));
  // Options may also follow the subcommand's position in any order.
  REQUIRE(Cli("--config \"" + cfg.string() + "\" --out \"" + b.string() + "\" run").code == 0);
  CHECK_FALSE(fs::exists(b / "trajectory.svg"));
  CHECK(Slurp(a / "trajectory.csv") == Slurp(b / "trajectory.csv"));
  REQUIRE(Cli("run --config \"" + cfg.string() + "\" --out \"" + c.string() + "\" --seed 2").code == 0);
  CHECK(Slurp(a / "trajectory.csv") != Slurp(c / "trajectory.csv"));
}

TEST_CASE("thread count from the environment does not change results") {
  const fs::path cfg = WriteConfig("linear.yaml", kLinear);
  const fs::path a = kTmp / "rr_1", b = kTmp / "rr_4";
  fs::remove_all(a);
  fs::remove_all(b);
  REQUIRE(Cli("rr --config \"" + cfg.string() + "\" --out \"" + a.string() + "\"", "VIERGO_THREADS=1").code == 0);
  REQUIRE(Cli("rr --config \"" + cfg.string() + "\" --out \"" + b.string() + "\"", "VIERGO_THREADS=4").code == 0);
  CHECK(Slurp(a / "rr.csv") == Slurp(b / "rr.csv"));
  const std::string header = Slurp(a / "rr.csv").substr(0, Slurp(a / "rr.csv").find('\n'));
  CHECK(header == "gamma,err_gamma,err_2gamma,err_rr,ci_halfwidth");
}

TEST_CASE("validate exit status tracks violations") {
  const fs::path ok = WriteConfig("linear.yaml", kLinear);
  CHECK(Cli("validate --config \"" + ok.string() + "\" --out \"" + (kTmp / "v_ok").string() + "\"").code == 0);
  const fs::path bad = WriteConfig(
      "understated.yaml",
      "operator: {kind: linear, mu: 1, dim: 1, growth: 0.5}\n"
      "solver: {gamma: 0.1, horizon: 20000}\n"
      "validate: {n_samples: 200, radius: 2, drift_probes: 4, drift_mc_samples: 500}\n");
  CHECK(Cli("validate --config \"" + bad.string() + "\" --out \"" + (kTmp / "v_bad").string() + "\"").code == 2);
}

TEST_CASE("divergence exits with its own status") {
  const fs::path cfg = WriteConfig(
      "diverge.yaml",
      "operator: {kind: linear, mu: 1}\nsolver: {gamma: 2.5, horizon: 1000, allow_inadmissible: true}\n");
  const fs::path dir = kTmp / "diverge";
  fs::remove_all(dir);
  const Outcome o = Cli("run --config \"" + cfg.string() + "\" --out \"" + dir.string() + "\"");
  CHECK(o.code == 3);
  CHECK(fs::exists(dir / "trajectory.csv.partial"));
}
