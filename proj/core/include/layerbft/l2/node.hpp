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
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "layerbft/l1/messages.hpp"
#include "layerbft/l2/messages.hpp"
#include "layerbft/l2/validation.hpp"
#include "layerbft/simnet/node_support.hpp"

namespace layerbft::l2 {

using simnet::Behavior;
using simnet::VirtualTime;

class NotFoundError : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

struct NodeOptions
{
  std::string id;
  /// Other L2 nodes; empty for a single-node L2.
  std::vector<std::string>        peers;
  std::vector<std::string>        l1_validators;
  std::shared_ptr<Registry const> registry;
  simnet::CostModel               cost;
  /// How long the originator waits for peer validation votes.
  VirtualTime peer_timeout = 200 * simnet::kMillisecond;
  /// On peer timeout, accept if every peer that did answer agrees.
  bool        accept_on_peer_timeout = true;
  /// Idle time after which an Active session is aborted.
  VirtualTime session_ttl = 600 * simnet::kSecond;
  Behavior    behavior    = Behavior::kHonest;
};

/// Full view of a session on its node: the replicated record plus the
/// operation buffer that will become the batch.
struct Session
{
  SessionRecord            record;
  std::vector<Transaction> operations;
};

struct StatusRecord
{
  std::string          session_id;
  SessionStatus        status = SessionStatus::kActive;
  Stage                stage  = Stage::kStarted;
  std::optional<L1Ref> l1_ref;
};

Value ToValue(StatusRecord const &s);

struct NodeStats
{
  std::uint64_t accepted           = 0;
  std::uint64_t handler_rejections = 0;
  std::uint64_t consensus_rejects  = 0;
  std::uint64_t degraded_accepts   = 0;
  std::uint64_t commits            = 0;
  std::uint64_t commit_failures    = 0;
  std::uint64_t aborts             = 0;
  std::uint64_t refused_deltas     = 0;
};

/// One L2 node. Requests are served one at a time in arrival order; while a
/// request waits for peer validation, later requests queue behind it.
class Node
{
public:
  Node(NodeOptions options, simnet::Network &net);
  Node(Node const &)            = delete;
  Node &operator=(Node const &) = delete;

  std::string const &id() const { return options_.id; }
  Behavior           behavior() const { return options_.behavior; }
  void               set_behavior(Behavior b) { options_.behavior = b; }

  AppState const  &app_state() const { return state_; }
  NodeStats const &stats() const { return stats_; }
  std::size_t      queued() const { return queue_.size() + (inflight_ ? 1 : 0); }

  /// Throws NotFoundError.
  Session GetSession(std::string const &session_id) const;
  /// `key` is a session id or the hex hash of a committed batch.
  StatusRecord QueryStatus(std::string const &key) const;
  /// Batch hash (hex) -> session id, for sessions this node saw commit.
  std::map<Digest, std::string> const &committed_index() const { return committed_index_; }

  /// Batch that committing `session_id` would submit now.
  BatchTransaction BuildBatch(std::string const &session_id) const;

  void OnMessage(std::string const &from, simnet::Message const &msg);

  /// Crash and restart: drops queued work, open sessions and uncommitted
  /// packages, then rebuilds the state by folding a committed L1 ledger.
  /// Calls in flight get no answer. The session counter survives so ids
  /// are never reused.
  void RestartFromLedger(std::span<Block const> ledger);

private:
  struct Work
  {
    enum class Kind : std::uint8_t
    {
      kRequest,
      kCommit,
      kAbort,
    };
    Kind           kind = Kind::kRequest;
    std::string    client;
    std::uint64_t  request_id = 0;
    ServiceRequest request;
    std::string    session_id;
  };

  struct InFlight
  {
    std::string                              client;
    std::uint64_t                            request_id = 0;
    Transaction                              tx;
    Digest                                   tx_hash;
    Digest                                   response_digest;
    bool                                     self_valid = false;
    std::string                              self_reason;
    std::map<std::string, ValidationVoteMsg> votes;
    simnet::Network::TimerId                 timer = 0;
  };

  struct PendingCommit
  {
    std::string                                 client;
    std::uint64_t                               request_id = 0;
    Digest                                      batch_hash;
    std::map<std::string, l1::CommitResultMsg>  results;
  };

  void Send(std::string const &to, simnet::Message msg, VirtualTime cost);
  void Respond(std::string const &client, std::uint64_t request_id, ServiceResponse response);
  void SendToPeers(std::string_view kind, Bytes const &payload);

  void Pump();
  void StartRequest(Work work);
  void StartCommit(Work const &work);
  void StartAbort(Work const &work);
  void Decide(bool timed_out);
  void Accept(Transaction const &tx);

  void HandleReplicate(std::string const &from, ReplicateTxMsg const &m);
  void HandleVote(std::string const &from, ValidationVoteMsg const &m);
  void HandleApplyDelta(std::string const &from, ApplyDeltaMsg const &m);
  void HandleSessionUpdate(std::string const &from, SessionUpdateMsg const &m);
  void HandleCommitResult(std::string const &from, l1::CommitResultMsg const &m);

  void SetStatus(std::string const &session_id, SessionStatus status,
                 std::optional<L1Ref> l1_ref, bool broadcast);
  void TouchSession(std::string const &session_id);
  void ExpireSession(std::string const &session_id);

  NodeOptions          options_;
  simnet::Network     &net_;
  simnet::ProcessClock clock_;
  std::size_t          l1_f_ = 0;

  AppState                                   state_;
  std::map<std::string, std::vector<Transaction>> buffers_;
  std::map<std::string, Transaction>         package_txs_;
  std::map<Digest, std::string>              committed_index_;
  std::uint64_t                              next_session_ = 0;

  std::deque<Work>                                   queue_;
  std::optional<InFlight>                            inflight_;
  std::map<std::string, PendingCommit>               pending_commits_;
  std::map<std::string, simnet::Network::TimerId>    ttl_timers_;

  NodeStats stats_;
};

}  // namespace layerbft::l2
