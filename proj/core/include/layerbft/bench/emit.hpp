// Copyright 2026 The LayerBFT Authors
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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "layerbft/bench/report.hpp"
#include "layerbft/bench/runner.hpp"

namespace layerbft::bench {

enum class Format
{
  kCsv,
  kJson,
  kTable,
};

/// "csv" | "json" | "table"; throws std::invalid_argument.
Format FormatFromName(std::string const &name);

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Header plus one row per (configuration, endpoint), milliseconds with
/// three decimals.
std::string ToCsv(std::vector<LatencyReport> const &reports);

nlohmann::json             ToJson(LatencyReport const &report);
nlohmann::json             ToJson(std::vector<LatencyReport> const &reports);
LatencyReport              ReportFromJson(nlohmann::json const &j);
std::vector<LatencyReport> ReportsFromJson(nlohmann::json const &j);

/// Fixed-width console table with per-endpoint rows and a summary line per
/// configuration.
std::string ToTable(std::vector<LatencyReport> const &reports);
std::string ToTable(Comparison const &comparison);

std::string Render(std::vector<LatencyReport> const &reports, Format format);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void WriteOutput(std::filesystem::path const &path, std::string const &text);

}  // namespace layerbft::bench
