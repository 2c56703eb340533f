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

#include "layerbft/bench/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "layerbft/sim/cluster.hpp"

namespace layerbft::bench {

EndpointStats const &LatencyReport::Endpoint(std::string const &name) const
{
  for (auto const &e : endpoints)
  {
    if (e.endpoint == name)
    {
      return e;
    }
  }
  throw std::out_of_range("no endpoint '" + name + "' in report " + config);
}

double Mean(std::vector<double> const &xs)
{
  if (xs.empty())
  {
    return 0;
  }
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double Median(std::vector<double> xs)
{
  if (xs.empty())
  {
    return 0;
  }
  std::sort(xs.begin(), xs.end());
  auto mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2;
}

double Percentile(std::vector<double> xs, double p)
{
  if (xs.empty())
  {
    return 0;
  }
  if (!(p > 0 && p <= 100))
  {
    throw std::invalid_argument("percentile out of range");
  }
  std::sort(xs.begin(), xs.end());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(xs.size())));
  return xs[std::max<std::size_t>(rank, 1) - 1];
}

double StdDev(std::vector<double> const &xs)
{
  if (xs.empty())
  {
    return 0;
  }
  auto   m   = Mean(xs);
  double acc = 0;
  for (auto x : xs)
  {
    acc += (x - m) * (x - m);
  }
  return std::sqrt(acc / static_cast<double>(xs.size()));
}

EndpointStats ComputeStats(std::string endpoint, std::vector<double> const &latencies_ms)
{
  EndpointStats s;
  s.endpoint  = std::move(endpoint);
  s.mean_ms   = Mean(latencies_ms);
  s.median_ms = Median(latencies_ms);
  s.p95_ms    = Percentile(latencies_ms, 95);
  s.stddev_ms = StdDev(latencies_ms);
  s.n         = latencies_ms.size();
  return s;
}

LatencyReport Aggregate(std::vector<LatencySample> const &samples, std::uint64_t seed,
                        std::string trace_digest)
{
  if (samples.empty())
  {
    throw std::invalid_argument("no samples");
  }
  LatencyReport r;
  r.n_l1         = samples.front().n_l1;
  r.n_l2         = samples.front().n_l2;
  r.config       = std::to_string(r.n_l1) + "-" + std::to_string(r.n_l2);
  r.seed         = seed;
  r.trace_digest = std::move(trace_digest);

  std::map<std::string, std::vector<double>>              by_endpoint;
  std::map<std::size_t, std::map<std::string, double>>    by_iteration;
  for (auto const &s : samples)
  {
    if (s.t_res < s.t_req)
    {
      throw std::invalid_argument("sample ends before it starts");
    }
    if (s.n_l1 != r.n_l1 || s.n_l2 != r.n_l2)
    {
      throw std::invalid_argument("samples from different configurations");
    }
    auto ms = simnet::ToMillis(s.latency());
    by_endpoint[s.endpoint].push_back(ms);
    if (!by_iteration[s.iteration].emplace(s.endpoint, ms).second)
    {
      throw std::invalid_argument("duplicate sample for " + s.endpoint);
    }
  }
  r.iterations = by_iteration.size();

  std::vector<double> l2_all;
  for (auto const *name : sim::kEndpointNames)
  {
    auto it = by_endpoint.find(name);
    if (it == by_endpoint.end() || it->second.size() != r.iterations)
    {
      throw std::invalid_argument(std::string{"missing samples for "} + name);
    }
    r.endpoints.push_back(ComputeStats(name, it->second));
    if (std::string_view{name} != "commit")
    {
      l2_all.insert(l2_all.end(), it->second.begin(), it->second.end());
    }
  }
  if (by_endpoint.size() != r.endpoints.size())
  {
    throw std::invalid_argument("unexpected endpoint in samples");
  }

  std::vector<double> totals;
  for (auto const &[it, per] : by_iteration)
  {
    double t = 0;
    for (auto const *name : sim::kEndpointNames)
    {
      t += per.at(name);
    }
    totals.push_back(t);
  }
  r.total_mean_ms   = Mean(totals);
  r.total_stddev_ms = StdDev(totals);
  r.l2_mean_ms      = Mean(l2_all);
  r.l1_mean_ms      = r.Endpoint("commit").mean_ms;
  r.speedup         = r.l2_mean_ms > 0 ? r.l1_mean_ms / r.l2_mean_ms : 0;
  return r;
}

}  // namespace layerbft::bench
