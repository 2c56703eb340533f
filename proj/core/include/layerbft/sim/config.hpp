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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "layerbft/registry/workflow.hpp"
#include "layerbft/simnet/node_support.hpp"

namespace layerbft::sim {

using simnet::Behavior;
using simnet::VirtualTime;

std::string L1NodeId(std::size_t i);
std::string L2NodeId(std::size_t i);
inline constexpr char const *kClientEndpoint = "client";

simnet::LatencyModel DefaultLatencyModel();
simnet::CostModel    DefaultCostModel();

struct ClusterConfig
{
  std::size_t          n_l1    = 4;
  std::size_t          n_l2    = 1;
  std::uint64_t        seed    = 42;
  simnet::LatencyModel latency = DefaultLatencyModel();
  simnet::CostModel    cost    = DefaultCostModel();
  /// 0 selects the default (see EffectiveRoundTimeout).
  VirtualTime round_timeout   = 0;
  VirtualTime l2_peer_timeout = 0;
  VirtualTime session_ttl     = 600 * simnet::kSecond;
  bool        accept_on_peer_timeout = true;
  /// Node id -> behaviour; unlisted nodes are honest.
  std::map<std::string, Behavior> behaviors;
  WorkflowConfig                  workflow;
  bool                            capture_trace = true;
  /// When set, every L1 node persists its ledger to <dir>/<node>.blocks.
  std::optional<std::filesystem::path> ledger_dir;

  std::size_t fault_budget() const;
  /// 20x the per-hop base delay, stretched by host contention like every
  /// other local cost.
  VirtualTime EffectiveRoundTimeout() const;
  VirtualTime EffectivePeerTimeout() const;
  /// "<n_l1>-<n_l2>", the notation used in reports.
  std::string Label() const;
  /// Throws ConfigError.
  void Validate() const;
};

}  // namespace layerbft::sim
