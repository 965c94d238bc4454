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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "viergo/config.hpp"

namespace viergo {

enum class Command { kRun, kBiasSweep, kClt, kRr, kValidate };

const char* CommandName(Command command);
std::optional<Command> ParseCommand(std::string_view name);

// Process exit statuses shared by the C API and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitDiverged = 3;

struct Manifest {
  std::string command;
  std::string config_hash;
  int exit_code = kExitOk;
  std::string message;
  std::vector<std::string> files;  // written outputs, in creation order
  std::string summary_json;        // command-specific numbers
  std::string ToJson() const;
};

// Runs one subcommand and writes its outputs (plus manifest.json) under
// config.output.dir. A diverged chain yields kExitDiverged and ".partial"
// files; a failed assumption check yields kExitViolation. Invalid input
// throws Error.
Manifest Execute(Command command, const ExperimentConfig& config, int threads);

}  // namespace viergo
