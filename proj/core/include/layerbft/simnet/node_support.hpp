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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>

#include "layerbft/simnet/network.hpp"

namespace layerbft::simnet {

/// Fault-injection behaviours shared by L1 and L2 nodes.
enum class Behavior : std::uint8_t
{
  kHonest = 0,
  /// Computes (or claims) results that differ from honest re-execution.
  kWrongResult,
  /// Sends conflicting proposals to different peers and votes for all.
  kEquivocate,
  /// Receives everything, sends nothing.
  kSilent,
};

std::string_view BehaviorName(Behavior b);
Behavior         BehaviorFromName(std::string_view name);

/// Sender-side processing costs of a node, in virtual time. Every cost is
/// stretched by host contention: all simulated nodes share one host, so
/// each extra co-hosted node slows every node down by `host_contention`.
struct CostModel
{
  VirtualTime execute         = 0;
  VirtualTime validate        = 0;
  VirtualTime send            = 0;
  VirtualTime vote_verify     = 0;
  VirtualTime l2_coordination = 0;
  VirtualTime commit          = 0;
  /// Proposer wait between entering a round and building its block.
  VirtualTime block_interval  = 0;
  double      host_contention = 0.0;
  std::size_t hosted_nodes    = 1;

  double Scale() const
  {
    return 1.0 + host_contention * static_cast<double>(hosted_nodes > 0 ? hosted_nodes - 1 : 0);
  }
  VirtualTime Scaled(VirtualTime c) const
  {
    return static_cast<VirtualTime>(std::llround(static_cast<double>(c) * Scale()));
  }
};

/// Serial event loop bookkeeping: a node works on one thing at a time, so
/// output of work started at `now` is ready only after earlier work drains.
class ProcessClock
{
public:
  /// Reserves `cost` of processing and returns the delay, relative to
  /// `now`, at which its output is ready.
  VirtualTime Occupy(VirtualTime now, VirtualTime cost)
  {
    auto start  = std::max(now, busy_until_);
    busy_until_ = start + std::max<VirtualTime>(cost, 0);
    return busy_until_ - now;
  }

  VirtualTime busy_until() const { return busy_until_; }

private:
  VirtualTime busy_until_ = 0;
};

}  // namespace layerbft::simnet
