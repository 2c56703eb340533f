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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "layerbft/gateway/http_mapping.hpp"
#include "layerbft/sim/cluster.hpp"

namespace layerbft::gateway {

using simnet::VirtualTime;

enum class Pacing
{
  /// Each call runs the simulation until it completes. Virtual time only
  /// moves while requests are in flight; used by tests.
  kDriven,
  /// A pump thread advances virtual time in step with the wall clock.
  kRealTime,
};

struct LiveOptions
{
  sim::ClusterConfig        config;
  std::size_t               l2_index = 0;  ///< The L2 node this gateway fronts.
  std::size_t               l1_index = 0;  ///< L1 node answering ledger reads.
  Pacing                    pacing   = Pacing::kDriven;
  std::chrono::milliseconds tick{5};
};

/// In-process cluster behind the gateway. Every access goes through one
/// mutex, so mutations for a session are serialized by construction.
class LiveCluster
{
public:
  explicit LiveCluster(LiveOptions options);
  LiveCluster(LiveCluster const &)            = delete;
  LiveCluster &operator=(LiveCluster const &) = delete;
  ~LiveCluster();

  struct Outcome
  {
    bool             completed = false;
    sim::ClientResult result;
  };

  /// Submits the call and waits up to `timeout` (virtual time when driven,
  /// wall time when real-time) for the node's answer.
  Outcome Execute(HttpCall const &call, VirtualTime timeout);

  /// Runs the simulation forward; a no-op in real-time mode.
  void Advance(VirtualTime duration);

  std::uint64_t NextNonce();
  std::string   node_id() const;
  VirtualTime   now() const;

  /// Snapshots rendered for the HTTP edge. nullopt when unknown.
  std::optional<nlohmann::json> SessionStatus(std::string const &key) const;
  /// Looks the hash up as a batch hash on L1, and as a session-layer batch
  /// hash on the fronted L2 node.
  std::optional<nlohmann::json> Tx(std::string const &hex) const;
  nlohmann::json                Blocks() const;
  std::optional<nlohmann::json> Block(std::uint64_t height) const;
  nlohmann::json                Health() const;

private:
  void Pump();

  LiveOptions                 options_;
  mutable std::mutex          mu_;
  std::condition_variable     progressed_;
  std::unique_ptr<sim::Cluster> cluster_;
  bool                        stop_ = false;
  std::thread                 pump_;
};

}  // namespace layerbft::gateway
