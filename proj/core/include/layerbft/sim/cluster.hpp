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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "layerbft/l1/node.hpp"
#include "layerbft/l2/node.hpp"
#include "layerbft/sim/config.hpp"

namespace layerbft::sim {

/// What the client saw for one call: response and virtual send/receive times.
struct ClientResult
{
  std::uint64_t   id = 0;
  std::string     endpoint;
  ServiceResponse response;
  VirtualTime     t_req     = 0;
  VirtualTime     t_res     = 0;
  bool            completed = false;

  VirtualTime latency() const { return t_res - t_req; }
};

/// Endpoint names used in reports, in workflow order.
inline constexpr char const *kEndpointNames[] = {
    "create_package", "start_session", "scan_package", "validate_package",
    "quality_check",  "label_package", "commit",
};

struct WorkflowOutcome
{
  std::string               package_id;
  std::string               session_id;
  std::vector<ClientResult> steps;
  bool                      ok = false;
  std::string               failure;
};

/// A whole simulated deployment: L1 validators, L2 nodes and one client
/// endpoint on a shared deterministic network.
class Cluster
{
public:
  explicit Cluster(ClusterConfig config);
  Cluster(Cluster const &)            = delete;
  Cluster &operator=(Cluster const &) = delete;
  ~Cluster();

  ClusterConfig const     &config() const { return config_; }
  simnet::Network         &network() { return *net_; }
  simnet::Network const   &network() const { return *net_; }
  Registry const          &registry() const { return *registry_; }
  VirtualTime              now() const { return net_->Now(); }

  std::size_t   n_l1() const { return l1_.size(); }
  std::size_t   n_l2() const { return l2_.size(); }
  l1::Node     &l1(std::size_t i) { return *l1_.at(i); }
  l2::Node     &l2(std::size_t i) { return *l2_.at(i); }
  l1::Node const &l1(std::size_t i) const { return *l1_.at(i); }
  l2::Node const &l2(std::size_t i) const { return *l2_.at(i); }
  std::vector<std::string> const &l1_ids() const { return l1_ids_; }
  std::vector<std::string> const &l2_ids() const { return l2_ids_; }

  bool IsHonest(std::string const &node) const;
  void SetBehavior(std::string const &node, Behavior b);
  /// Crash-restarts L2 node `l2_index` from the ledger of L1 node `l1_source`.
  void RestartL2(std::size_t l2_index, std::size_t l1_source = 0);

  std::string const &client_id() const { return client_id_; }
  std::uint64_t      NextNonce() { return ++nonce_; }

  // Asynchronous client: returns a call id; the result appears once the
  // simulation has delivered the response.
  std::uint64_t SendRequest(ServiceRequest request, std::size_t l2_index = 0,
                            std::string endpoint = {});
  std::uint64_t SendCommit(std::string const &session_id, std::size_t l2_index = 0);
  std::uint64_t SendAbort(std::string const &session_id, std::size_t l2_index = 0);
  std::optional<ClientResult> Result(std::uint64_t id) const;
  /// Runs `fn` when call `id` completes (immediately if it already has).
  void OnCompletion(std::uint64_t id, std::function<void(ClientResult const &)> fn);

  /// Runs the simulation until call `id` completes or `max_wait` of virtual
  /// time passes; an incomplete result has completed == false.
  ClientResult Await(std::uint64_t id, VirtualTime max_wait = kDefaultWait);

  ClientResult Call(ServiceRequest request, std::size_t l2_index = 0, std::string endpoint = {},
                    VirtualTime max_wait = kDefaultWait);
  ClientResult Commit(std::string const &session_id, std::size_t l2_index = 0,
                      VirtualTime max_wait = kDefaultWait);
  ClientResult Abort(std::string const &session_id, std::size_t l2_index = 0,
                     VirtualTime max_wait = kDefaultWait);

  /// Processes events until the network is idle or `max` virtual time has
  /// passed (session TTL timers keep the queue non-empty).
  void Settle(VirtualTime max = 5 * simnet::kSecond);
  void RunFor(VirtualTime duration);

  /// create -> start -> scan -> validate -> quality-check -> label, then
  /// commit when asked. Stops at the first failing step.
  WorkflowOutcome RunWorkflow(std::string const &package_id, bool commit = true,
                              std::size_t l2_index = 0);

  static constexpr VirtualTime kDefaultWait = 60 * simnet::kSecond;

private:
  std::uint64_t Dispatch(std::string const &kind, Bytes payload, std::size_t l2_index,
                         std::string endpoint);
  void          OnClientMessage(simnet::Message const &msg);

  ClusterConfig                          config_;
  std::shared_ptr<Registry const>        registry_;
  std::unique_ptr<simnet::Network>       net_;
  std::vector<std::string>               l1_ids_;
  std::vector<std::string>               l2_ids_;
  std::vector<std::unique_ptr<l1::Node>> l1_;
  std::vector<std::unique_ptr<l2::Node>> l2_;
  std::string                            client_id_ = "operator-1";
  std::uint64_t                          nonce_     = 0;
  std::uint64_t                          next_call_ = 0;
  std::map<std::uint64_t, ClientResult>  calls_;
  std::map<std::uint64_t, std::function<void(ClientResult const &)>> callbacks_;
};

}  // namespace layerbft::sim
