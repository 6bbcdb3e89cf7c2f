// Copyright 2026 The RAPS Toolkit Authors
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

#include "raps/bench/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "raps/errors.h"

namespace raps::bench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Table = std::vector<std::map<std::string, std::string>>;

std::vector<std::string> Split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

// header plus rows keyed by column name
Table ReadTsv(const fs::path& path, std::vector<std::string>* header_out) {
  std::ifstream in(path);
  if (!in) throw ConfigError("missing '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty '" + path.string() + "'");
  const std::vector<std::string> header = Split(line, '\t');
  if (header_out) *header_out = header;
  Table rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = Split(line, '\t');
    if (cells.size() != header.size()) {
      throw ConfigError("ragged row in '" + path.string() + "'");
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < cells.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

double ToDouble(const std::map<std::string, std::string>& row,
                const std::string& key) {
  const auto it = row.find(key);
  if (it == row.end()) throw ConfigError("missing column '" + key + "'");
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ConfigError("column '" + key + "' is not numeric: " + it->second);
  }
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

// plot geometry
constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;

std::string LineChart(const std::string& title, const std::string& x_label,
                      double x_max, const std::vector<const LoadedRun*>& runs,
                      Clock clock) {
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const double span = x_max > 0 ? x_max : 1.0;
  const auto sx = [&](double x) { return kLeft + pw * x / span; };
  const auto sy = [&](double y) { return kTop + ph * (1.0 - y); };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << Escape(title) << "</text>\n";
  // axes, ticks and grid
  for (int i = 0; i <= 5; ++i) {
    const double y = i / 5.0, x = span * i / 5.0;
    svg << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\""
        << sy(y) << "\" y2=\"" << sy(y) << "\" stroke=\"#ddd\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(y) + 4
        << "\" text-anchor=\"end\">" << Num(y) << "</text>\n";
    svg << "<text x=\"" << sx(x) << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << Num(x) << "</text>\n";
  }
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 18
      << "\" text-anchor=\"middle\">" << Escape(x_label) << "</text>\n";
  svg << "<text transform=\"translate(18," << kTop + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">eval success rate</text>\n";

  for (std::size_t r = 0; r < runs.size(); ++r) {
    const char* color = kPalette[r % std::size(kPalette)];
    std::vector<CurvePoint> pts;
    for (const CurvePoint& p : runs[r]->curves.at(clock)) {
      if (p.x <= x_max) pts.push_back(p);
    }
    if (!pts.empty()) {
      // 95% band, then the mean
      svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.15\" "
          << "stroke=\"none\" points=\"";
      for (const CurvePoint& p : pts) {
        svg << sx(p.x) << ',' << sy(std::clamp(p.ci_high, 0.0, 1.0)) << ' ';
      }
      for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        svg << sx(it->x) << ',' << sy(std::clamp(it->ci_low, 0.0, 1.0)) << ' ';
      }
      svg << "\"/>\n<polyline fill=\"none\" stroke-width=\"2\" stroke=\""
          << color << "\" points=\"";
      for (const CurvePoint& p : pts) {
        svg << sx(p.x) << ',' << sy(p.success) << ' ';
      }
      svg << "\"/>\n";
    }
    const double ly = kTop + 14 + 18.0 * static_cast<double>(r);
    svg << "<line x1=\"" << kLeft + pw + 12 << "\" x2=\"" << kLeft + pw + 32
        << "\" y1=\"" << ly - 4 << "\" y2=\"" << ly - 4 << "\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << ly << "\">"
        << Escape(runs[r]->label + " (" + runs[r]->mode + ")") << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string UsageChart(const std::vector<const LoadedRun*>& runs) {
  std::vector<std::string> names;
  for (const LoadedRun* run : runs) {
    for (const std::string& n : run->primitive_names) {
      if (std::find(names.begin(), names.end(), n) == names.end()) {
        names.push_back(n);
      }
    }
  }
  std::int64_t peak = 1;
  for (const LoadedRun* run : runs) {
    for (std::int64_t c : run->final_usage) peak = std::max(peak, c);
  }
  const double row_h = 16.0 * static_cast<double>(runs.size()) + 8.0;
  const double left = 160, width = 640, bar_w = 360;
  const double height = 60 + row_h * static_cast<double>(names.size());
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"15\">primitive calls, final evaluation</text>\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double y0 = 40 + row_h * static_cast<double>(i);
    svg << "<text x=\"" << left - 8 << "\" y=\"" << y0 + row_h / 2
        << "\" text-anchor=\"end\">" << Escape(names[i]) << "</text>\n";
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto& run_names = runs[r]->primitive_names;
      const auto it = std::find(run_names.begin(), run_names.end(), names[i]);
      const std::int64_t count =
          it == run_names.end()
              ? 0
              : runs[r]->final_usage[static_cast<std::size_t>(
                    it - run_names.begin())];
      const double w = bar_w * static_cast<double>(count) /
                       static_cast<double>(peak);
      const double y = y0 + 4 + 16.0 * static_cast<double>(r);
      svg << "<rect x=\"" << left << "\" y=\"" << y << "\" width=\"" << w
          << "\" height=\"12\" fill=\"" << kPalette[r % std::size(kPalette)]
          << "\"/>\n";
      svg << "<text x=\"" << left + w + 4 << "\" y=\"" << y + 10 << "\">"
          << count << "</text>\n";
    }
  }
  for (std::size_t r = 0; r < runs.size(); ++r) {
    svg << "<text x=\"" << left + bar_w + 60 << "\" y=\""
        << 56 + 16.0 * static_cast<double>(r) << "\" fill=\""
        << kPalette[r % std::size(kPalette)] << "\">"
        << Escape(runs[r]->label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteFile(const fs::path& path, const std::string& text,
               std::vector<std::string>& files) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  files.push_back(path.string());
}

}  // namespace

const char* ClockName(Clock clock) {
  switch (clock) {
    case Clock::kTrainingSteps: return "training_steps";
    case Clock::kWallClock: return "wall_clock_s";
    case Clock::kLowLevelSteps: return "low_level_steps";
  }
  return "?";
}

LoadedRun LoadRun(const std::string& dir) {
  LoadedRun run;
  run.dir = dir;
  run.label = fs::path(dir).lexically_normal().filename().string();
  if (run.label.empty()) {
    run.label = fs::path(dir).lexically_normal().parent_path().filename();
  }
  std::ifstream in(fs::path(dir) / "config.json");
  if (!in) throw ConfigError("'" + dir + "' is not a run directory");
  try {
    const json j = json::parse(in);
    const json& task = j.at("config").at("task");
    run.task = task.is_string() ? task.get<std::string>()
                                : task.at("name").get<std::string>();
    run.mode = j.at("config").at("mode").get<std::string>();
    run.config_hash = j.at("config_hash").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError("malformed config.json in '" + dir + "': " + e.what());
  }

  const Table summary = ReadTsv(fs::path(dir) / "summary.tsv", nullptr);
  const Table wall = ReadTsv(fs::path(dir) / "summary_wallclock.tsv", nullptr);
  if (summary.empty()) throw ConfigError("run '" + dir + "' has no results");
  for (const auto& row : summary) {
    CurvePoint p{0.0, ToDouble(row, "success_mean"),
                 ToDouble(row, "success_ci_low"),
                 ToDouble(row, "success_ci_high")};
    p.x = ToDouble(row, "training_steps");
    run.curves[Clock::kTrainingSteps].push_back(p);
    p.x = ToDouble(row, "low_level_steps");
    run.curves[Clock::kLowLevelSteps].push_back(p);
  }
  for (const auto& row : wall) {
    run.curves[Clock::kWallClock].push_back(
        {ToDouble(row, "wall_clock_s"), ToDouble(row, "success_mean"),
         ToDouble(row, "success_ci_low"), ToDouble(row, "success_ci_high")});
  }

  std::vector<std::string> header;
  const Table usage = ReadTsv(fs::path(dir) / "usage.tsv", &header);
  const std::size_t fixed = 4;  // seed, training_steps, episodes, mean_unique
  if (header.size() < fixed) throw ConfigError("malformed usage.tsv");
  run.primitive_names.assign(header.begin() + fixed, header.end());
  run.final_usage.assign(run.primitive_names.size(), 0);
  // last evaluation of each seed
  std::map<std::string, const std::map<std::string, std::string>*> last;
  for (const auto& row : usage) last[row.at("seed")] = &row;
  for (const auto& [seed, row] : last) {
    for (std::size_t k = 0; k < run.primitive_names.size(); ++k) {
      run.final_usage[k] += static_cast<std::int64_t>(
          ToDouble(*row, run.primitive_names[k]));
    }
  }
  if (usage.empty()) run.primitive_names.clear();
  return run;
}

CompareReport Compare(const std::vector<std::string>& run_dirs,
                      const std::string& out_dir) {
  if (run_dirs.size() < 2) {
    throw ConfigError("compare needs at least two run directories");
  }
  std::vector<LoadedRun> runs;
  for (const std::string& dir : run_dirs) runs.push_back(LoadRun(dir));
  CompareReport report;
  report.task = runs.front().task;
  for (const LoadedRun& run : runs) {
    if (run.task != report.task) {
      throw ConfigError("cannot compare runs on different tasks: '" +
                        runs.front().dir + "' is " + report.task + ", '" +
                        run.dir + "' is " + run.task);
    }
  }
  std::vector<const LoadedRun*> ptrs;
  for (const LoadedRun& run : runs) ptrs.push_back(&run);

  for (Clock clock : kAllClocks) {
    double cap = INFINITY;
    for (const LoadedRun& run : runs) {
      cap = std::min(cap, run.curves.at(clock).back().x);
    }
    report.caps[clock] = cap;
    for (const LoadedRun& run : runs) {
      CompareRow row;
      row.run = run.label;
      row.mode = run.mode;
      row.clock = clock;
      row.cap = cap;
      for (const CurvePoint& p : run.curves.at(clock)) {
        if (p.x <= cap) {
          row.at_cap = p;
          row.has_value = true;
        }
      }
      report.rows.push_back(row);
    }
  }

  fs::create_directories(out_dir);
  std::ostringstream table;
  table << "run\tmode\tclock\tcap\tx\tsuccess_mean\tsuccess_ci_low\t"
           "success_ci_high\n";
  for (const CompareRow& row : report.rows) {
    table << row.run << '\t' << row.mode << '\t' << ClockName(row.clock)
          << '\t' << Num(row.cap) << '\t';
    if (row.has_value) {
      table << Num(row.at_cap.x) << '\t' << Num(row.at_cap.success) << '\t'
            << Num(row.at_cap.ci_low) << '\t' << Num(row.at_cap.ci_high);
    } else {
      table << "NA\tNA\tNA\tNA";
    }
    table << '\n';
  }
  const fs::path out(out_dir);
  WriteFile(out / "compare.tsv", table.str(), report.files);
  for (Clock clock : kAllClocks) {
    const std::string name = ClockName(clock);
    WriteFile(out / ("success_vs_" + name + ".svg"),
              LineChart(report.task + ": success vs " + name, name,
                        report.caps[clock], ptrs, clock),
              report.files);
  }
  std::vector<const LoadedRun*> with_usage;
  for (const LoadedRun* run : ptrs) {
    if (!run->primitive_names.empty()) with_usage.push_back(run);
  }
  if (!with_usage.empty()) {
    WriteFile(out / "primitive_usage.svg", UsageChart(with_usage),
              report.files);
  }
  return report;
}

}  // namespace raps::bench
