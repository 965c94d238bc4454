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

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace viergo {

using CsvRow = std::vector<std::string>;

CsvRow NumericRow(std::initializer_list<double> values);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
  std::string config_hash;  // empty when the trailer is absent

  std::optional<std::size_t> Column(std::string_view name) const;
  // Throws kValidation when the column is missing or a cell is not numeric.
  std::vector<double> NumericColumn(std::string_view name) const;
};

// Header line, rows, then "# config_hash=<hex>"; '\n' line endings.
std::string FormatCsv(const CsvTable& table);
void WriteCsv(const std::filesystem::path& path, const CsvTable& table);
CsvTable ParseCsv(std::string_view text);
CsvTable ReadCsv(const std::filesystem::path& path);

// Appends ".partial" when the producing run did not finish cleanly.
std::filesystem::path OutputPath(const std::filesystem::path& dir,
                                 const std::string& name, bool partial);

enum class PlotKind { kTrajectoryLogLog, kHistogram, kBarErrors };

const char* PlotKindName(PlotKind kind);
std::optional<PlotKind> ParsePlotKind(std::string_view name);

// Freedman-Diaconis rule: width 2 IQR n^(-1/3), at least one bin.
int FreedmanDiaconisBins(std::span<const double> values);

// Expected columns:
//   trajectory_loglog  t followed by one or more series
//   histogram          value
//   bar_errors         gamma, err_gamma, err_2gamma, err_rr [, ci_halfwidth]
// Throws kValidation on a schema mismatch or when nothing is plottable.
std::string RenderSvg(PlotKind kind, const CsvTable& table, const std::string& title);

// Renders first, so a validation failure leaves no file behind.
void WriteSvg(PlotKind kind, const CsvTable& table, const std::string& title,
              const std::filesystem::path& path);

}  // namespace viergo
