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

#include <cstdint>
#include <string>
#include <vector>

#include "layerbft/simnet/network.hpp"

namespace layerbft::bench {

using simnet::VirtualTime;

struct LatencySample
{
  std::string endpoint;
  VirtualTime t_req     = 0;
  VirtualTime t_res     = 0;
  std::size_t n_l1      = 0;
  std::size_t n_l2      = 0;
  std::size_t iteration = 0;

  VirtualTime latency() const { return t_res - t_req; }
};

struct EndpointStats
{
  std::string endpoint;
  double      mean_ms   = 0;
  double      median_ms = 0;
  double      p95_ms    = 0;
  double      stddev_ms = 0;
  std::size_t n         = 0;

  friend bool operator==(EndpointStats const &, EndpointStats const &) = default;
};

/// Aggregated latencies of one cluster configuration. Endpoints are listed
/// in workflow order, commit last.
struct LatencyReport
{
  std::string                config;
  std::size_t                n_l1       = 0;
  std::size_t                n_l2       = 0;
  std::uint64_t              seed       = 0;
  std::size_t                iterations = 0;
  std::vector<EndpointStats> endpoints;
  double                     total_mean_ms   = 0;
  double                     total_stddev_ms = 0;
  /// Mean over every sample of the six session-layer endpoints.
  double      l2_mean_ms = 0;
  /// Mean of the commit endpoint.
  double      l1_mean_ms = 0;
  double      speedup    = 0;
  std::string trace_digest;

  EndpointStats const &Endpoint(std::string const &name) const;

  friend bool operator==(LatencyReport const &, LatencyReport const &) = default;
};

double Mean(std::vector<double> const &xs);
/// Average of the two middle elements for even sizes.
double Median(std::vector<double> xs);
/// Nearest-rank percentile, p in (0, 100].
double Percentile(std::vector<double> xs, double p);
/// Population standard deviation.
double StdDev(std::vector<double> const &xs);

EndpointStats ComputeStats(std::string endpoint, std::vector<double> const &latencies_ms);

/// Builds a report from raw samples. Every iteration must contribute one
/// sample per endpoint; throws std::invalid_argument otherwise.
LatencyReport Aggregate(std::vector<LatencySample> const &samples, std::uint64_t seed,
                        std::string trace_digest = {});

}  // namespace layerbft::bench
