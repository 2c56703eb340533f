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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "layerbft/core/ledger.hpp"
#include "layerbft/l1/messages.hpp"
#include "layerbft/l1/validation.hpp"
#include "layerbft/simnet/node_support.hpp"

namespace layerbft::l1 {

using simnet::Behavior;
using simnet::VirtualTime;

struct NodeOptions
{
  std::string id;
  /// Full validator set in rotation order; must contain `id`.
  std::vector<std::string>        validators;
  std::shared_ptr<Registry const> registry;
  simnet::CostModel               cost;
  VirtualTime                     round_timeout = 200 * simnet::kMillisecond;
  Behavior                        behavior      = Behavior::kHonest;
  /// When set, committed blocks are appended here and replayed on startup.
  std::optional<std::filesystem::path> block_file;
};

enum class Admission : std::uint8_t
{
  kAccepted = 0,
  kAlreadyPending,
  kRejected,
};

struct NodeStats
{
  std::uint64_t proposals_sent    = 0;
  std::uint64_t votes_sent        = 0;
  std::uint64_t rounds_timed_out  = 0;
  std::uint64_t rounds_rejected   = 0;
  std::uint64_t batches_dropped   = 0;
  std::uint64_t blocks_committed  = 0;
  std::uint64_t notices_adopted   = 0;
};

/// One L1 validator: single-shot PBFT-style agreement per height with
/// proposer rotation on round timeout.
///
/// A node votes ACCEPT for at most one block per height and stays locked on
/// it in later rounds, so two quorums for different hashes would need a
/// correct node to vote twice. A node that misses the votes catches up from
/// any CommitNotice whose certificate verifies.
class Node
{
public:
  Node(NodeOptions options, simnet::Network &net);
  Node(Node const &)            = delete;
  Node &operator=(Node const &) = delete;

  std::string const &id() const { return options_.id; }
  Behavior           behavior() const { return options_.behavior; }
  void               set_behavior(Behavior b) { options_.behavior = b; }
  bool               honest() const { return options_.behavior == Behavior::kHonest; }

  std::uint64_t             current_height() const { return ledger_.size(); }
  std::uint64_t             round() const { return round_; }
  std::vector<Block> const &ledger() const { return ledger_; }
  AppState const           &app_state() const { return state_; }
  std::size_t               mempool_size() const { return mempool_.size(); }
  NodeStats const          &stats() const { return stats_; }
  std::size_t               quorum() const { return quorum_; }
  std::optional<Digest>     locked_hash() const
  {
    return locked_ ? std::optional<Digest>{locked_->block_hash} : std::nullopt;
  }
  std::size_t               fault_budget() const { return f_; }

  std::string const &ProposerFor(std::uint64_t height, std::uint64_t round) const;

  std::optional<Block>                            GetBlock(std::uint64_t height) const;
  std::optional<std::pair<BatchTransaction, L1Ref>> GetTx(Digest const &tx_hash) const;

  /// Mempool admission. Rejected batches get a CommitResult right away.
  Admission Submit(BatchTransaction batch, std::string *why = nullptr);

  /// Block the proposer would build now: its locked block if any, else the
  /// mempool in arrival order. Nothing when there is nothing to propose.
  std::optional<Block> ProposeBlock(std::uint64_t height) const;

  /// This node's signed vote on a proposal. Honest nodes re-execute and
  /// refuse anything other than the block they are locked on.
  Vote ProcessProposal(Block const &block, std::uint64_t round) const;

  /// Appends a block with a valid quorum certificate. Returns false when
  /// the block does not extend the tip or the certificate is short.
  bool CommitBlock(Block block);

  void OnMessage(std::string const &from, simnet::Message const &msg);

private:
  struct VoteTally
  {
    std::map<std::string, Vote> by_voter;
  };

  void Send(std::string const &to, simnet::Message msg, VirtualTime cost);
  void Broadcast(simnet::Message const &msg, VirtualTime first_cost);
  bool HasWork() const { return !mempool_.empty() || locked_.has_value(); }

  void MaybeStartRound();
  void EnterRound(std::uint64_t round);
  void ArmRoundTimer();
  void OnRoundTimer(std::uint64_t height, std::uint64_t round);
  void OnProposeTimer(std::uint64_t height, std::uint64_t round);

  void HandleSubmit(std::string const &from, SubmitBatchMsg const &m);
  void HandleProposal(std::string const &from, ProposalMsg const &m);
  void HandleVote(Vote const &vote);
  void HandleCommitNotice(CommitNoticeMsg const &m);
  void HandleRoundTimeout(std::string const &from, RoundTimeoutMsg const &m);

  void TryDecide(std::uint64_t round, Digest const &hash);
  void RejectRound(std::uint64_t round, Block const &block, VoteTally const &tally);
  void AdvanceRound(std::uint64_t next);
  /// No block can reach quorum in `round` any more, counting every voter
  /// not yet heard from as a future ACCEPT.
  bool RoundIsDead(std::uint64_t round) const;
  bool VerifyCertificate(Block const &block) const;
  void AfterCommit(Block const &block);
  void ReportResult(CommitResultMsg const &result, std::string const &to);
  void ResetHeightState();
  void ReplayPersisted();

  NodeOptions        options_;
  simnet::Network   &net_;
  std::size_t        index_  = 0;
  std::size_t        quorum_ = 0;
  std::size_t        f_      = 0;
  simnet::ProcessClock clock_;

  std::vector<Block>                       ledger_;
  AppState                                 state_;
  std::map<Digest, L1Ref>                  tx_index_;
  std::vector<BatchTransaction>            mempool_;
  std::optional<BlockFile>                 block_file_;

  // Per-height consensus state.
  std::uint64_t                                       round_        = 0;
  bool                                                round_active_ = false;
  std::optional<Block>                                locked_;
  std::optional<simnet::Network::TimerId>             round_timer_;
  std::set<std::uint64_t>                             proposed_rounds_;
  std::set<std::uint64_t>                             voted_rounds_;
  std::set<std::uint64_t>                             rejected_rounds_;
  std::map<std::uint64_t, Block>                      proposals_;
  std::map<Digest, Block>                             known_blocks_;
  std::map<std::pair<std::uint64_t, Digest>, VoteTally> votes_;
  std::map<std::uint64_t, std::set<std::string>>      timeouts_;

  /// Messages for heights this node has not reached yet.
  std::map<std::uint64_t, std::vector<std::pair<std::string, simnet::Message>>> future_;

  NodeStats stats_;
  bool      replaying_ = false;
};

}  // namespace layerbft::l1
