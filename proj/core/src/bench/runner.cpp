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

#include "layerbft/bench/runner.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "layerbft/sim/cluster.hpp"

namespace layerbft::bench {

RunOutput RunConfigDetailed(sim::ClusterConfig const &config, std::size_t iterations)
{
  if (iterations == 0)
  {
    throw std::invalid_argument("iterations must be >= 1");
  }
  config.Validate();
  sim::Cluster cluster(config);

  RunOutput out;
  for (std::size_t i = 0; i < iterations; ++i)
  {
    auto pkg = "pkg-" + config.Label() + "-" + std::to_string(config.seed) + "-" +
               std::to_string(i);
    auto wf = cluster.RunWorkflow(pkg);
    if (!wf.ok || wf.steps.size() != std::size(sim::kEndpointNames))
    {
      throw RunError("iteration " + std::to_string(i) + " of " + config.Label() +
                         " failed: " + wf.failure,
                     cluster.network().trace());
    }
    for (auto const &step : wf.steps)
    {
      out.samples.push_back(
          {step.endpoint, step.t_req, step.t_res, config.n_l1, config.n_l2, i});
    }
    // Let stragglers finish so iterations do not overlap.
    cluster.Settle(2 * simnet::kSecond);
  }
  out.trace  = cluster.network().trace();
  out.report = Aggregate(out.samples, config.seed, out.trace.digest.Hex());
  return out;
}

LatencyReport RunConfig(sim::ClusterConfig const &config, std::size_t iterations)
{
  return RunConfigDetailed(config, iterations).report;
}

std::vector<LatencyReport> Sweep(SweepOptions const &options)
{
  std::vector<sim::ClusterConfig> configs;
  for (auto n2 : options.l2_nodes)
  {
    for (auto n1 : options.l1_nodes)
    {
      auto c = options.base;
      c.n_l1 = n1;
      c.n_l2 = n2;
      c.seed = options.seed + configs.size();
      c.Validate();
      configs.push_back(std::move(c));
    }
  }

  auto jobs = options.jobs != 0 ? options.jobs
                                : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::vector<std::future<RunOutput>> pending(configs.size());
  std::size_t                         launched = 0;
  auto launch = [&] {
    auto const &c      = configs[launched];
    pending[launched] = std::async(std::launch::async, [&c, &options] {
      return RunConfigDetailed(c, options.iterations);
    });
    ++launched;
  };

  std::vector<LatencyReport> reports;
  for (std::size_t i = 0; i < configs.size(); ++i)
  {
    while (launched < configs.size() && launched < i + jobs)
    {
      launch();
    }
    auto out = pending[i].get();
    if (options.on_result)
    {
      options.on_result(out);
    }
    reports.push_back(std::move(out.report));
  }
  return reports;
}

Comparison Compare(LatencyReport const &a, LatencyReport const &b)
{
  if (a.iterations != b.iterations)
  {
    throw CompareError("iteration counts differ: " + std::to_string(a.iterations) + " vs " +
                       std::to_string(b.iterations));
  }
  if (a.endpoints.size() != b.endpoints.size())
  {
    throw CompareError("endpoint sets differ");
  }
  Comparison c;
  c.a_config = a.config;
  c.b_config = b.config;
  for (std::size_t i = 0; i < a.endpoints.size(); ++i)
  {
    auto const &ea = a.endpoints[i];
    auto const &eb = b.endpoints[i];
    if (ea.endpoint != eb.endpoint)
    {
      throw CompareError("endpoint mismatch: " + ea.endpoint + " vs " + eb.endpoint);
    }
    c.rows.push_back({ea.endpoint, ea.mean_ms, eb.mean_ms,
                      ea.mean_ms > 0 ? eb.mean_ms / ea.mean_ms : 0});
  }
  c.a_speedup       = a.speedup;
  c.b_speedup       = b.speedup;
  c.advantage_delta = a.speedup - b.speedup;
  c.l2_mean_ratio   = a.l2_mean_ms > 0 ? b.l2_mean_ms / a.l2_mean_ms : 0;
  c.l1_mean_ratio   = a.l1_mean_ms > 0 ? b.l1_mean_ms / a.l1_mean_ms : 0;
  return c;
}

}  // namespace layerbft::bench
