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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "viergo/viergo.h"

namespace {

int Report(const char* what) {
  std::fprintf(stderr, "viergo: %s: %s\n", what, viergo_last_error());
  return VIERGO_EXIT_ERROR;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant step-size SGDA/SEG experiments for min-max games"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool svg = false;
  app.add_option("--config", config_path, "YAML experiment configuration")->required();
  app.add_option("--seed", seed, "Override the master seed (u64)");
  app.add_option("--out", out_dir, "Override the output directory");
  app.add_flag("--svg", svg, "Also render SVG figures");

  const char* commands[][2] = {
      {"run", "Single chain: trajectory and steady-state error"},
      {"bias-sweep", "Steady-state error and gap across step sizes"},
      {"clt", "Replicated normalized sums for histograms"},
      {"rr", "Richardson-Romberg refinement against plain averaging"},
      {"validate", "Check the operator assumptions and drift inequality"},
  };
  for (const auto& c : commands) app.add_subcommand(c[0], c[1])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help is a clean exit; every usage error maps to the generic status.
    return app.exit(e) == 0 ? VIERGO_EXIT_OK : VIERGO_EXIT_ERROR;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  viergo_config* config = nullptr;
  if (viergo_config_load(config_path.c_str(), &config) != VIERGO_OK) {
    return Report("configuration");
  }
  if (seed) viergo_config_set_seed(config, *seed);
  if (out_dir && viergo_config_set_output_dir(config, out_dir->c_str()) != VIERGO_OK) {
    viergo_config_free(config);
    return Report("--out");
  }
  if (svg) viergo_config_set_emit_svg(config, 1);

  viergo_result* result = nullptr;
  const viergo_status status = viergo_execute(config, command.c_str(), 0, &result);
  viergo_config_free(config);
  if (status != VIERGO_OK) return Report(command.c_str());

  std::fputs(viergo_result_manifest_json(result), stdout);
  const int code = viergo_result_exit_code(result);
  if (code != VIERGO_EXIT_OK) {
    std::fprintf(stderr, "viergo: %s: %s\n", command.c_str(), viergo_result_message(result));
  }
  viergo_result_free(result);
  return code;
}
