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

#include "layerbft/bench/emit.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace layerbft::bench {
namespace {

std::string Fixed(double v, int decimals = 3)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string Pad(std::string s, std::size_t width, bool left = false)
{
  if (s.size() >= width)
  {
    return s;
  }
  std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

}  // namespace

Format FormatFromName(std::string const &name)
{
  if (name == "csv")
  {
    return Format::kCsv;
  }
  if (name == "json")
  {
    return Format::kJson;
  }
  if (name == "table")
  {
    return Format::kTable;
  }
  throw std::invalid_argument("unknown format '" + name + "'");
}

std::string ToCsv(std::vector<LatencyReport> const &reports)
{
  std::string out = "config,endpoint,mean_ms,median_ms,p95_ms,n\n";
  for (auto const &r : reports)
  {
    for (auto const &e : r.endpoints)
    {
      out += r.config + "," + e.endpoint + "," + Fixed(e.mean_ms) + "," + Fixed(e.median_ms) +
             "," + Fixed(e.p95_ms) + "," + std::to_string(e.n) + "\n";
    }
  }
  return out;
}

nlohmann::json ToJson(LatencyReport const &r)
{
  nlohmann::json eps = nlohmann::json::array();
  for (auto const &e : r.endpoints)
  {
    eps.push_back({{"endpoint", e.endpoint},
                   {"mean_ms", e.mean_ms},
                   {"median_ms", e.median_ms},
                   {"p95_ms", e.p95_ms},
                   {"stddev_ms", e.stddev_ms},
                   {"n", e.n}});
  }
  return {{"config", r.config},
          {"n_l1", r.n_l1},
          {"n_l2", r.n_l2},
          {"seed", r.seed},
          {"iterations", r.iterations},
          {"endpoints", std::move(eps)},
          {"total_mean_ms", r.total_mean_ms},
          {"total_stddev_ms", r.total_stddev_ms},
          {"l2_mean_ms", r.l2_mean_ms},
          {"l1_mean_ms", r.l1_mean_ms},
          {"speedup", r.speedup},
          {"trace_digest", r.trace_digest}};
}

nlohmann::json ToJson(std::vector<LatencyReport> const &reports)
{
  nlohmann::json j = nlohmann::json::array();
  for (auto const &r : reports)
  {
    j.push_back(ToJson(r));
  }
  return j;
}

LatencyReport ReportFromJson(nlohmann::json const &j)
{
  LatencyReport r;
  j.at("config").get_to(r.config);
  j.at("n_l1").get_to(r.n_l1);
  j.at("n_l2").get_to(r.n_l2);
  j.at("seed").get_to(r.seed);
  j.at("iterations").get_to(r.iterations);
  for (auto const &e : j.at("endpoints"))
  {
    EndpointStats s;
    e.at("endpoint").get_to(s.endpoint);
    e.at("mean_ms").get_to(s.mean_ms);
    e.at("median_ms").get_to(s.median_ms);
    e.at("p95_ms").get_to(s.p95_ms);
    e.at("stddev_ms").get_to(s.stddev_ms);
    e.at("n").get_to(s.n);
    r.endpoints.push_back(std::move(s));
  }
  j.at("total_mean_ms").get_to(r.total_mean_ms);
  j.at("total_stddev_ms").get_to(r.total_stddev_ms);
  j.at("l2_mean_ms").get_to(r.l2_mean_ms);
  j.at("l1_mean_ms").get_to(r.l1_mean_ms);
  j.at("speedup").get_to(r.speedup);
  j.at("trace_digest").get_to(r.trace_digest);
  return r;
}

std::vector<LatencyReport> ReportsFromJson(nlohmann::json const &j)
{
  std::vector<LatencyReport> out;
  for (auto const &r : j)
  {
    out.push_back(ReportFromJson(r));
  }
  return out;
}

std::string ToTable(std::vector<LatencyReport> const &reports)
{
  std::string out;
  for (auto const &r : reports)
  {
    out += "config " + r.config + "  seed " + std::to_string(r.seed) + "  iterations " +
           std::to_string(r.iterations) + "\n";
    out += Pad("endpoint", 18, true) + Pad("mean_ms", 11) + Pad("median_ms", 11) +
           Pad("p95_ms", 11) + Pad("stddev_ms", 11) + Pad("n", 6) + "\n";
    for (auto const &e : r.endpoints)
    {
      out += Pad(e.endpoint, 18, true) + Pad(Fixed(e.mean_ms), 11) + Pad(Fixed(e.median_ms), 11) +
             Pad(Fixed(e.p95_ms), 11) + Pad(Fixed(e.stddev_ms), 11) +
             Pad(std::to_string(e.n), 6) + "\n";
    }
    out += "total " + Fixed(r.total_mean_ms) + " +/- " + Fixed(r.total_stddev_ms) +
           " ms  l2_mean " + Fixed(r.l2_mean_ms) + " ms  l1_mean " + Fixed(r.l1_mean_ms) +
           " ms  speedup " + Fixed(r.speedup, 2) + "x\n";
    out += "trace " + r.trace_digest + "\n\n";
  }
  return out;
}

std::string ToTable(Comparison const &c)
{
  std::string out = Pad("endpoint", 18, true) + Pad(c.a_config, 11) + Pad(c.b_config, 11) +
                    Pad("ratio", 8) + "\n";
  for (auto const &row : c.rows)
  {
    out += Pad(row.endpoint, 18, true) + Pad(Fixed(row.a_mean_ms), 11) +
           Pad(Fixed(row.b_mean_ms), 11) + Pad(Fixed(row.ratio, 2), 8) + "\n";
  }
  out += "speedup " + c.a_config + " " + Fixed(c.a_speedup, 2) + "x, " + c.b_config + " " +
         Fixed(c.b_speedup, 2) + "x, advantage delta " + Fixed(c.advantage_delta, 2) + "\n";
  return out;
}

std::string Render(std::vector<LatencyReport> const &reports, Format format)
{
  switch (format)
  {
  case Format::kCsv: return ToCsv(reports);
  case Format::kJson: return ToJson(reports).dump(2) + "\n";
  case Format::kTable: return ToTable(reports);
  }
  return {};
}

void WriteOutput(std::filesystem::path const &path, std::string const &text)
{
  if (path.empty() || path == "-")
  {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << text;
  out.flush();
  if (!out)
  {
    throw IoError("write to " + path.string() + " failed");
  }
}

}  // namespace layerbft::bench
