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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "layerbft/bench/report.hpp"
#include "layerbft/sim/config.hpp"

namespace layerbft::bench {

/// A benchmark iteration failed. Carries the network trace up to the
/// failure (events are present only when trace capture was on).
class RunError : public std::runtime_error
{
public:
  RunError(std::string const &what, simnet::Trace trace)
      : std::runtime_error(what), trace_(std::move(trace))
  {}
  simnet::Trace const &trace() const { return trace_; }

private:
  simnet::Trace trace_;
};

struct RunOutput
{
  LatencyReport              report;
  std::vector<LatencySample> samples;
  simnet::Trace              trace;
};

/// Fresh cluster, `iterations` sequential workflows with unique package ids,
/// each followed by a commit. Throws RunError on the first failed step.
RunOutput     RunConfigDetailed(sim::ClusterConfig const &config, std::size_t iterations);
LatencyReport RunConfig(sim::ClusterConfig const &config, std::size_t iterations);

struct SweepOptions
{
  std::vector<std::size_t> l1_nodes = {4, 7, 10, 13, 16};
  std::vector<std::size_t> l2_nodes = {1, 2};
  std::size_t              iterations = 100;
  std::uint64_t            seed       = 42;
  /// Template for every configuration; n_l1, n_l2 and seed are overwritten.
  sim::ClusterConfig base;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t jobs = 0;
  /// Called with each finished configuration's output (from the calling
  /// thread, in configuration order).
  std::function<void(RunOutput const &)> on_result;
};

/// Configurations are enumerated l2-major (all n_l1 for the first n_l2,
/// then the next); configuration i runs with seed + i.
std::vector<LatencyReport> Sweep(SweepOptions const &options);

class CompareError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct ComparisonRow
{
  std::string endpoint;
  double      a_mean_ms = 0;
  double      b_mean_ms = 0;
  double      ratio     = 0;  ///< b / a
};

struct Comparison
{
  std::string                a_config;
  std::string                b_config;
  std::vector<ComparisonRow> rows;
  double                     a_speedup = 0;
  double                     b_speedup = 0;
  /// a.speedup - b.speedup: how much more the session layer gains in A.
  double advantage_delta = 0;
  double l2_mean_ratio   = 0;
  double l1_mean_ratio   = 0;
};

/// Throws CompareError when the reports differ in endpoints or iteration
/// count.
Comparison Compare(LatencyReport const &a, LatencyReport const &b);

}  // namespace layerbft::bench
