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

#include "viergo/viergo.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "viergo/config.hpp"
#include "viergo/experiment.hpp"
#include "viergo/parallel.hpp"
#include "viergo/report.hpp"

struct viergo_config {
  viergo::ExperimentConfig value;
};

struct viergo_result {
  viergo::Manifest manifest;
  std::string json;
};

struct viergo_trajectory {
  viergo::Trajectory value;
};

namespace {

thread_local std::string g_last_error;

viergo_status StatusFor(viergo::ErrorCode code) {
  switch (code) {
    case viergo::ErrorCode::kInput: return VIERGO_ERR_INPUT;
    case viergo::ErrorCode::kConfiguration: return VIERGO_ERR_CONFIG;
    case viergo::ErrorCode::kPrecondition: return VIERGO_ERR_PRECONDITION;
    case viergo::ErrorCode::kIo: return VIERGO_ERR_IO;
    case viergo::ErrorCode::kValidation: return VIERGO_ERR_VALIDATION;
    case viergo::ErrorCode::kDomain: return VIERGO_ERR_DOMAIN;
    case viergo::ErrorCode::kUnsupported: return VIERGO_ERR_UNSUPPORTED;
  }
  return VIERGO_ERR_INTERNAL;
}

// Runs body, translating exceptions into a status plus the thread's message.
template <typename Body>
viergo_status Guard(Body&& body) {
  g_last_error.clear();
  try {
    body();
    return VIERGO_OK;
  } catch (const viergo::Error& e) {
    g_last_error = e.what();
    return StatusFor(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return VIERGO_ERR_INTERNAL;
}

viergo_status NullArgument(const char* name) {
  g_last_error = std::string("argument '") + name + "' must not be null";
  return VIERGO_ERR_INPUT;
}

}  // namespace

extern "C" {

const char* viergo_version(void) { return "0.1.0"; }

const char* viergo_last_error(void) { return g_last_error.c_str(); }

int viergo_default_threads(void) { return viergo::DefaultThreadCount(); }

viergo_status viergo_config_load(const char* path, viergo_config** out) {
  if (!path) return NullArgument("path");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] { *out = new viergo_config{viergo::ParseConfig(path)}; });
}

viergo_status viergo_config_parse(const char* yaml_text, viergo_config** out) {
  if (!yaml_text) return NullArgument("yaml_text");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] { *out = new viergo_config{viergo::ParseConfigText(yaml_text)}; });
}

void viergo_config_free(viergo_config* config) { delete config; }

viergo_status viergo_config_set_seed(viergo_config* config, uint64_t seed) {
  if (!config) return NullArgument("config");
  config->value.seed = seed;
  return VIERGO_OK;
}

viergo_status viergo_config_set_output_dir(viergo_config* config, const char* dir) {
  if (!config) return NullArgument("config");
  if (!dir || !*dir) return NullArgument("dir");
  config->value.output.dir = dir;
  return VIERGO_OK;
}

viergo_status viergo_config_set_emit_svg(viergo_config* config, int enabled) {
  if (!config) return NullArgument("config");
  config->value.output.emit_svg = enabled != 0;
  return VIERGO_OK;
}

viergo_status viergo_config_serialize(const viergo_config* config, char** out) {
  if (!config) return NullArgument("config");
  if (!out) return NullArgument("out");
  return Guard([&] {
    const std::string text = viergo::SerializeConfig(config->value);
    *out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!*out) throw std::bad_alloc();
    std::memcpy(*out, text.c_str(), text.size() + 1);
  });
}

viergo_status viergo_config_hash(const viergo_config* config, char out[17]) {
  if (!config) return NullArgument("config");
  if (!out) return NullArgument("out");
  return Guard([&] {
    const std::string h = viergo::ConfigHash(config->value);
    std::memcpy(out, h.c_str(), 17);
  });
}

viergo_status viergo_execute(const viergo_config* config, const char* command, int threads,
                             viergo_result** out) {
  if (!config) return NullArgument("config");
  if (!command) return NullArgument("command");
  if (!out) return NullArgument("out");
  *out = nullptr;
  const auto parsed = viergo::ParseCommand(command);
  if (!parsed) {
    g_last_error = std::string("unknown command '") + command +
                   "' (expected run, bias-sweep, clt, rr or validate)";
    return VIERGO_ERR_INPUT;
  }
  return Guard([&] {
    const int n = threads > 0 ? threads : viergo::DefaultThreadCount();
    viergo::Manifest m = viergo::Execute(*parsed, config->value, n);
    std::string json = m.ToJson();
    *out = new viergo_result{std::move(m), std::move(json)};
  });
}

int viergo_result_exit_code(const viergo_result* result) {
  return result ? result->manifest.exit_code : VIERGO_EXIT_ERROR;
}

const char* viergo_result_message(const viergo_result* result) {
  return result ? result->manifest.message.c_str() : "";
}

const char* viergo_result_manifest_json(const viergo_result* result) {
  return result ? result->json.c_str() : "";
}

void viergo_result_free(viergo_result* result) { delete result; }

viergo_status viergo_simulate(const viergo_config* config, uint64_t chain,
                              viergo_trajectory** out) {
  if (!config) return NullArgument("config");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    const viergo::Problem p = viergo::BuildProblem(config->value);
    const viergo::SolverConfig sc = viergo::BuildSolverConfig(config->value, p.op);
    const viergo::OracleFactory factory(p.op, p.noise, config->value.seed);
    *out = new viergo_trajectory{viergo::RunChain(sc, factory, chain)};
  });
}

int64_t viergo_trajectory_steps(const viergo_trajectory* traj) {
  return traj ? traj->value.steps_run : 0;
}

int viergo_trajectory_diverged(const viergo_trajectory* traj, int64_t* iteration) {
  if (!traj || !traj->value.divergence) return 0;
  if (iteration) *iteration = traj->value.divergence->iteration;
  return 1;
}

size_t viergo_trajectory_dimension(const viergo_trajectory* traj) {
  return traj ? static_cast<size_t>(traj->value.last.size()) : 0;
}

size_t viergo_trajectory_cesaro_mean(const viergo_trajectory* traj, double* out, size_t len) {
  if (!traj || traj->value.count < 1) return 0;
  const viergo::Vector mean = traj->value.CesaroMean();
  const auto n = static_cast<size_t>(mean.size());
  for (size_t i = 0; out && i < n && i < len; ++i) out[i] = mean[static_cast<Eigen::Index>(i)];
  return n;
}

size_t viergo_trajectory_sq_err(const viergo_trajectory* traj, double* out, size_t len) {
  if (!traj) return 0;
  const auto& s = traj->value.sq_err;
  for (size_t i = 0; out && i < s.size() && i < len; ++i) out[i] = s[i];
  return s.size();
}

void viergo_trajectory_free(viergo_trajectory* traj) { delete traj; }

viergo_status viergo_plot(const char* csv_path, const char* kind, const char* svg_path,
                          const char* title) {
  if (!csv_path) return NullArgument("csv_path");
  if (!kind) return NullArgument("kind");
  if (!svg_path) return NullArgument("svg_path");
  const auto parsed = viergo::ParsePlotKind(kind);
  if (!parsed) {
    g_last_error = std::string("unknown plot kind '") + kind + "'";
    return VIERGO_ERR_INPUT;
  }
  return Guard([&] {
    viergo::WriteSvg(*parsed, viergo::ReadCsv(csv_path), title ? title : "", svg_path);
  });
}

void viergo_string_free(char* s) { std::free(s); }

}  // extern "C"
