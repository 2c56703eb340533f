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

#include "layerbft/sim/config.hpp"

#include "layerbft/l1/quorum.hpp"

namespace layerbft::sim {

using simnet::kMillisecond;

std::string L1NodeId(std::size_t i)
{
  return "l1-" + std::to_string(i);
}

std::string L2NodeId(std::size_t i)
{
  return "l2-" + std::to_string(i);
}

// Fitted by sweep against the 4-1 anchor and the speedup bands; see README.
simnet::LatencyModel DefaultLatencyModel()
{
  simnet::LatencyModel m;
  m.base_delay = 22 * kMillisecond;
  m.jitter     = 2 * kMillisecond;
  return m;
}

simnet::CostModel DefaultCostModel()
{
  simnet::CostModel c;
  c.execute         = 6 * kMillisecond;
  c.validate        = 6 * kMillisecond;
  c.send            = 500;
  c.vote_verify     = 1 * kMillisecond;
  c.l2_coordination = 28 * kMillisecond;
  c.commit          = 10 * kMillisecond;
  c.block_interval  = 20 * kMillisecond;
  c.host_contention = 0.1;
  return c;
}

std::size_t ClusterConfig::fault_budget() const
{
  return FaultBudget(n_l1);
}

VirtualTime ClusterConfig::EffectiveRoundTimeout() const
{
  if (round_timeout > 0)
  {
    return round_timeout;
  }
  auto scaled  = cost;
  scaled.hosted_nodes = n_l1 + n_l2;
  return scaled.Scaled(20 * latency.base_delay);
}

VirtualTime ClusterConfig::EffectivePeerTimeout() const
{
  if (l2_peer_timeout > 0)
  {
    return l2_peer_timeout;
  }
  auto scaled         = cost;
  scaled.hosted_nodes = n_l1 + n_l2;
  return scaled.Scaled(20 * latency.base_delay);
}

std::string ClusterConfig::Label() const
{
  return std::to_string(n_l1) + "-" + std::to_string(n_l2);
}

void ClusterConfig::Validate() const
{
  if (n_l1 < kMinL1Nodes)
  {
    throw ConfigError("an L1 cluster needs at least " + std::to_string(kMinL1Nodes) +
                      " nodes, got " + std::to_string(n_l1));
  }
  if (n_l1 < 3 * fault_budget() + 1)
  {
    throw ConfigError("n_l1 must be at least 3f+1");
  }
  if (n_l2 < 1)
  {
    throw ConfigError("at least one L2 node is required");
  }
  try
  {
    latency.Validate();
  }
  catch (std::invalid_argument const &e)
  {
    throw ConfigError(e.what());
  }
  if (cost.execute < 0 || cost.validate < 0 || cost.send < 0 || cost.vote_verify < 0 ||
      cost.l2_coordination < 0 || cost.commit < 0 || cost.block_interval < 0 ||
      cost.host_contention < 0)
  {
    throw ConfigError("cost model entries must be non-negative");
  }
  if (round_timeout < 0 || l2_peer_timeout < 0 || session_ttl <= 0)
  {
    throw ConfigError("timeouts must be positive");
  }
  for (auto const &[node, b] : behaviors)
  {
    bool known = false;
    for (std::size_t i = 0; i < n_l1 && !known; ++i)
    {
      known = node == L1NodeId(i);
    }
    for (std::size_t i = 0; i < n_l2 && !known; ++i)
    {
      known = node == L2NodeId(i);
    }
    if (!known)
    {
      throw ConfigError("behavior set for unknown node " + node);
    }
    if (b == Behavior::kEquivocate && node.rfind("l2-", 0) == 0)
    {
      throw ConfigError("Equivocate is an L1 behavior");
    }
  }
}

}  // namespace layerbft::sim
