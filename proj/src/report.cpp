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

#include "viergo/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "viergo/error.hpp"
#include "viergo/format.hpp"

namespace viergo {

CsvRow NumericRow(std::initializer_list<double> values) {
  CsvRow row;
  row.reserve(values.size());
  for (double v : values) row.push_back(FormatNumber(v));
  return row;
}

std::optional<std::size_t> CsvTable::Column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

bool ParseCell(const std::string& cell, double& out) {
  if (cell == "inf") { out = std::numeric_limits<double>::infinity(); return true; }
  if (cell == "-inf") { out = -std::numeric_limits<double>::infinity(); return true; }
  if (cell == "nan") { out = std::numeric_limits<double>::quiet_NaN(); return true; }
  auto res = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return !cell.empty() && res.ec == std::errc() && res.ptr == cell.data() + cell.size();
}

std::vector<std::string> SplitLine(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<double> CsvTable::NumericColumn(std::string_view name) const {
  const auto col = Column(name);
  if (!col) Fail(ErrorCode::kValidation, "missing column '" + std::string(name) + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double v = 0.0;
    if (*col >= rows[r].size() || !ParseCell(rows[r][*col], v)) {
      Fail(ErrorCode::kValidation, "column '" + std::string(name) + "' row " +
                                       std::to_string(r + 1) + " is not numeric");
    }
    out.push_back(v);
  }
  return out;
}

std::string FormatCsv(const CsvTable& table) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  append_row(table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      Fail(ErrorCode::kValidation, "CSV row width does not match the header");
    }
    append_row(row);
  }
  out += "# config_hash=" + table.config_hash + "\n";
  return out;
}

void WriteCsv(const std::filesystem::path& path, const CsvTable& table) {
  const std::string text = FormatCsv(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

CsvTable ParseCsv(std::string_view text) {
  CsvTable table;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kKey = "# config_hash=";
      if (line.substr(0, kKey.size()) == kKey) table.config_hash = line.substr(kKey.size());
      continue;
    }
    auto cells = SplitLine(line);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  if (!have_header) Fail(ErrorCode::kValidation, "CSV has no header row");
  return table;
}

CsvTable ReadCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCsv(buf.str());
}

std::filesystem::path OutputPath(const std::filesystem::path& dir,
                                 const std::string& name, bool partial) {
  return dir / (partial ? name + ".partial" : name);
}

const char* PlotKindName(PlotKind kind) {
  switch (kind) {
    case PlotKind::kTrajectoryLogLog: return "trajectory_loglog";
    case PlotKind::kHistogram: return "histogram";
    case PlotKind::kBarErrors: return "bar_errors";
  }
  return "unknown";
}

std::optional<PlotKind> ParsePlotKind(std::string_view name) {
  for (auto k : {PlotKind::kTrajectoryLogLog, PlotKind::kHistogram, PlotKind::kBarErrors}) {
    if (name == PlotKindName(k)) return k;
  }
  return std::nullopt;
}

namespace {

double Quantile(std::vector<double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

int FreedmanDiaconisBins(std::span<const double> values) {
  if (values.empty()) Fail(ErrorCode::kValidation, "histogram needs at least one value");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double range = sorted.back() - sorted.front();
  const double iqr = Quantile(sorted, 0.75) - Quantile(sorted, 0.25);
  const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
  if (!(range > 0.0) || !(width > 0.0)) return 1;
  // Heavy tails with a tiny IQR can ask for absurd counts.
  constexpr double kMaxBins = 1000.0;
  return static_cast<int>(std::clamp(std::ceil(range / width), 1.0, kMaxBins));
}

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
constexpr double kPlotW = kWidth - kLeft - kRight, kPlotH = kHeight - kTop - kBottom;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string Fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Short(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Svg {
 public:
  explicit Svg(const std::string& title) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
         << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
         << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out_ << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    Text(kLeft + kPlotW / 2, 22, title, "middle", 14);
    out_ << "<rect x=\"" << Fixed(kLeft) << "\" y=\"" << Fixed(kTop) << "\" width=\""
         << Fixed(kPlotW) << "\" height=\"" << Fixed(kPlotH)
         << "\" fill=\"none\" stroke=\"black\"/>\n";
  }

  void Text(double x, double y, const std::string& s, const char* anchor = "middle",
            int size = 12, bool vertical = false) {
    out_ << "<text x=\"" << Fixed(x) << "\" y=\"" << Fixed(y) << "\" text-anchor=\"" << anchor
         << "\" font-size=\"" << size << "\"";
    if (vertical) out_ << " transform=\"rotate(-90 " << Fixed(x) << ' ' << Fixed(y) << ")\"";
    out_ << ">" << Escape(s) << "</text>\n";
  }

  void Line(double x1, double y1, double x2, double y2, const char* stroke = "black",
            double width = 1.0) {
    out_ << "<line x1=\"" << Fixed(x1) << "\" y1=\"" << Fixed(y1) << "\" x2=\"" << Fixed(x2)
         << "\" y2=\"" << Fixed(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
         << Fixed(width) << "\"/>\n";
  }

  void Rect(double x, double y, double w, double h, const char* fill) {
    out_ << "<rect x=\"" << Fixed(x) << "\" y=\"" << Fixed(y) << "\" width=\"" << Fixed(w)
         << "\" height=\"" << Fixed(h) << "\" fill=\"" << fill << "\" stroke=\"black\""
         << " stroke-width=\"0.5\"/>\n";
  }

  void Polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ << ' ';
      out_ << Fixed(pts[i].first) << ',' << Fixed(pts[i].second);
    }
    out_ << "\"/>\n";
  }

  void AxisLabels(const std::string& x_label, const std::string& y_label) {
    Text(kLeft + kPlotW / 2, kHeight - 15, x_label);
    Text(20, kTop + kPlotH / 2, y_label, "middle", 12, true);
  }

  void Legend(std::size_t index, const std::string& name, const char* color) {
    const double y = kTop + 15 + 18 * static_cast<double>(index);
    Line(kLeft + kPlotW + 12, y - 4, kLeft + kPlotW + 32, y - 4, color, 3);
    Text(kLeft + kPlotW + 38, y, name, "start");
  }

  std::string Finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

struct Range {
  double lo, hi;
  double Map(double v, double a, double b) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

Range Padded(double lo, double hi) {
  if (!(hi > lo)) return {lo - 0.5, hi + 0.5};
  return {lo, hi};
}

std::string RenderTrajectory(const CsvTable& table, const std::string& title) {
  if (table.header.size() < 2 || table.header[0] != "t") {
    Fail(ErrorCode::kValidation,
         "trajectory_loglog expects a 't' column followed by at least one series");
  }
  const auto t = table.NumericColumn("t");
  std::vector<std::vector<std::pair<double, double>>> series(table.header.size() - 1);
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (std::size_t s = 1; s < table.header.size(); ++s) {
    const auto y = table.NumericColumn(table.header[s]);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!(t[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(t[i]) || !std::isfinite(y[i])) {
        continue;
      }
      const double lx = std::log10(t[i]), ly = std::log10(y[i]);
      series[s - 1].emplace_back(lx, ly);
      xlo = std::min(xlo, lx); xhi = std::max(xhi, lx);
      ylo = std::min(ylo, ly); yhi = std::max(yhi, ly);
    }
  }
  if (!std::isfinite(xlo)) {
    Fail(ErrorCode::kValidation, "trajectory_loglog has no positive points to plot");
  }
  const Range xr = Padded(std::floor(xlo), std::ceil(xhi));
  const Range yr = Padded(std::floor(ylo), std::ceil(yhi));
  Svg svg(title);
  for (double k = std::ceil(xr.lo); k <= xr.hi; k += 1.0) {
    const double x = xr.Map(k, kLeft, kLeft + kPlotW);
    svg.Line(x, kTop + kPlotH, x, kTop + kPlotH + 5);
    svg.Text(x, kTop + kPlotH + 18, "1e" + FormatNumber(k));
  }
  for (double k = std::ceil(yr.lo); k <= yr.hi; k += 1.0) {
    const double y = yr.Map(k, kTop + kPlotH, kTop);
    svg.Line(kLeft - 5, y, kLeft, y);
    svg.Text(kLeft - 8, y + 4, "1e" + FormatNumber(k), "end");
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(series[s].size());
    for (auto [lx, ly] : series[s]) {
      pts.emplace_back(xr.Map(lx, kLeft, kLeft + kPlotW), yr.Map(ly, kTop + kPlotH, kTop));
    }
    const char* color = kPalette[s % std::size(kPalette)];
    if (!pts.empty()) svg.Polyline(pts, color);
    svg.Legend(s, table.header[s + 1], color);
  }
  svg.AxisLabels("iteration t (log scale)", "squared error |x_t - x*|^2 (log scale)");
  return svg.Finish();
}

std::string RenderHistogram(const CsvTable& table, const std::string& title) {
  if (!table.Column("value")) Fail(ErrorCode::kValidation, "histogram expects a 'value' column");
  auto values = table.NumericColumn("value");
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  if (values.empty()) Fail(ErrorCode::kValidation, "histogram has no finite values");
  const int bins = FreedmanDiaconisBins(values);
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const Range xr = Padded(*mn, *mx);
  const double width = (xr.hi - xr.lo) / bins;
  std::vector<int> counts(bins, 0);
  for (double v : values) {
    auto b = static_cast<int>((v - xr.lo) / width);
    counts[std::clamp(b, 0, bins - 1)]++;
  }
  const int peak = *std::max_element(counts.begin(), counts.end());
  const Range yr{0.0, peak * 1.05};
  Svg svg(title);
  for (int b = 0; b < bins; ++b) {
    const double x0 = xr.Map(xr.lo + b * width, kLeft, kLeft + kPlotW);
    const double x1 = xr.Map(xr.lo + (b + 1) * width, kLeft, kLeft + kPlotW);
    const double y = yr.Map(counts[b], kTop + kPlotH, kTop);
    svg.Rect(x0, y, x1 - x0, kTop + kPlotH - y, kPalette[0]);
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double x = xr.Map(v, kLeft, kLeft + kPlotW);
    svg.Line(x, kTop + kPlotH, x, kTop + kPlotH + 5);
    svg.Text(x, kTop + kPlotH + 18, Short(v));
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = yr.hi * i / 4.0;
    const double y = yr.Map(v, kTop + kPlotH, kTop);
    svg.Line(kLeft - 5, y, kLeft, y);
    svg.Text(kLeft - 8, y + 4, Short(v), "end");
  }
  svg.Legend(0, std::to_string(values.size()) + " replicates", kPalette[0]);
  svg.Legend(1, std::to_string(bins) + " bins", "white");
  svg.AxisLabels("normalized sum N^(-1/2) sum f(x_t) (value)", "count");
  return svg.Finish();
}

std::string RenderBarErrors(const CsvTable& table, const std::string& title) {
  static constexpr const char* kBars[] = {"err_gamma", "err_2gamma", "err_rr"};
  if (!table.Column("gamma")) Fail(ErrorCode::kValidation, "bar_errors expects a 'gamma' column");
  for (auto* name : kBars) {
    if (!table.Column(name)) {
      Fail(ErrorCode::kValidation, std::string("bar_errors expects a '") + name + "' column");
    }
  }
  if (table.rows.empty()) Fail(ErrorCode::kValidation, "bar_errors has no rows");
  const auto gammas = table.NumericColumn("gamma");
  std::vector<std::vector<double>> bars;
  for (auto* name : kBars) bars.push_back(table.NumericColumn(name));
  std::vector<double> ci(gammas.size(), 0.0);
  if (table.Column("ci_halfwidth")) ci = table.NumericColumn("ci_halfwidth");
  double peak = 0.0;
  for (std::size_t r = 0; r < gammas.size(); ++r) {
    for (const auto& b : bars) {
      if (std::isfinite(b[r])) peak = std::max(peak, b[r]);
    }
    if (std::isfinite(ci[r]) && std::isfinite(bars[2][r])) peak = std::max(peak, bars[2][r] + ci[r]);
  }
  if (!(peak > 0.0)) Fail(ErrorCode::kValidation, "bar_errors has nothing positive to plot");
  const Range yr{0.0, peak * 1.1};
  Svg svg(title);
  const double group = kPlotW / static_cast<double>(gammas.size());
  const double bar = group / 4.0;
  for (std::size_t r = 0; r < gammas.size(); ++r) {
    const double gx = kLeft + group * static_cast<double>(r) + bar / 2;
    for (std::size_t b = 0; b < bars.size(); ++b) {
      const double v = std::isfinite(bars[b][r]) ? std::max(0.0, bars[b][r]) : 0.0;
      const double y = yr.Map(v, kTop + kPlotH, kTop);
      svg.Rect(gx + bar * static_cast<double>(b), y, bar, kTop + kPlotH - y, kPalette[b]);
    }
    if (ci[r] > 0.0 && std::isfinite(ci[r])) {
      const double cx = gx + bar * 2.5;
      const double ylo = yr.Map(std::max(0.0, bars[2][r] - ci[r]), kTop + kPlotH, kTop);
      const double yhi = yr.Map(bars[2][r] + ci[r], kTop + kPlotH, kTop);
      svg.Line(cx, ylo, cx, yhi);
      svg.Line(cx - 4, ylo, cx + 4, ylo);
      svg.Line(cx - 4, yhi, cx + 4, yhi);
    }
    svg.Text(gx + bar * 1.5, kTop + kPlotH + 18, "gamma=" + FormatNumber(gammas[r]));
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = yr.hi * i / 4.0;
    const double y = yr.Map(v, kTop + kPlotH, kTop);
    svg.Line(kLeft - 5, y, kLeft, y);
    svg.Text(kLeft - 8, y + 4, Short(v), "end");
  }
  for (std::size_t b = 0; b < bars.size(); ++b) svg.Legend(b, kBars[b], kPalette[b]);
  svg.AxisLabels("step size", "error |xbar - x*| (distance)");
  return svg.Finish();
}

}  // namespace

std::string RenderSvg(PlotKind kind, const CsvTable& table, const std::string& title) {
  if (table.rows.empty()) {
    Fail(ErrorCode::kValidation, std::string(PlotKindName(kind)) + " plot needs at least one row");
  }
  switch (kind) {
    case PlotKind::kTrajectoryLogLog: return RenderTrajectory(table, title);
    case PlotKind::kHistogram: return RenderHistogram(table, title);
    case PlotKind::kBarErrors: return RenderBarErrors(table, title);
  }
  Fail(ErrorCode::kUnsupported, "unknown plot kind");
}

void WriteSvg(PlotKind kind, const CsvTable& table, const std::string& title,
              const std::filesystem::path& path) {
  const std::string svg = RenderSvg(kind, table, title);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << svg;
}

}  // namespace viergo
