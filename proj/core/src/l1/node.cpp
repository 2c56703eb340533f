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

#include "layerbft/l1/node.hpp"

#include <algorithm>

#include "layerbft/l1/quorum.hpp"

namespace layerbft::l1 {
namespace {

// Proposals and votes further ahead than this are dropped, not buffered.
constexpr std::uint64_t kMaxFutureHeights = 64;

std::size_t CountVerdict(std::map<std::string, Vote> const &votes, Verdict v)
{
  return static_cast<std::size_t>(std::count_if(
      votes.begin(), votes.end(), [v](auto const &kv) { return kv.second.verdict == v; }));
}

Block Rehash(Block b)
{
  b.block_hash = ComputeBlockHash(b);
  return b;
}

}  // namespace

Node::Node(NodeOptions options, simnet::Network &net) : options_{std::move(options)}, net_{net}
{
  auto const &vs = options_.validators;
  auto        it = std::find(vs.begin(), vs.end(), options_.id);
  if (it == vs.end())
  {
    throw ConfigError("node " + options_.id + " is not in its validator set");
  }
  if (!options_.registry)
  {
    throw ConfigError("node " + options_.id + " has no registry");
  }
  index_  = static_cast<std::size_t>(it - vs.begin());
  quorum_ = Quorum(vs.size());
  f_      = FaultBudget(vs.size());
  net_.Register(options_.id,
                [this](std::string const &from, simnet::Message const &msg) { OnMessage(from, msg); });
  if (options_.block_file)
  {
    block_file_.emplace(*options_.block_file);
    ReplayPersisted();
  }
}

std::string const &Node::ProposerFor(std::uint64_t height, std::uint64_t round) const
{
  auto const &vs = options_.validators;
  return vs[(height + round) % vs.size()];
}

std::optional<Block> Node::GetBlock(std::uint64_t height) const
{
  if (height >= ledger_.size())
  {
    return std::nullopt;
  }
  return ledger_[height];
}

std::optional<std::pair<BatchTransaction, L1Ref>> Node::GetTx(Digest const &tx_hash) const
{
  auto it = tx_index_.find(tx_hash);
  if (it == tx_index_.end())
  {
    return std::nullopt;
  }
  for (auto const &batch : ledger_[it->second.block_height].tx_list)
  {
    if (BatchHash(batch) == tx_hash)
    {
      return std::make_pair(batch, it->second);
    }
  }
  return std::nullopt;
}

Admission Node::Submit(BatchTransaction batch, std::string *why)
{
  auto check = AdmitBatch(batch, state_);
  if (!check.ok)
  {
    if (why)
    {
      *why = check.reason;
    }
    return Admission::kRejected;
  }
  auto hash = BatchHash(batch);
  for (auto const &pending : mempool_)
  {
    if (BatchHash(pending) == hash)
    {
      return Admission::kAlreadyPending;
    }
    if (pending.session_id == batch.session_id)
    {
      if (why)
      {
        *why = "duplicate: another batch for session " + batch.session_id + " is pending";
      }
      return Admission::kRejected;
    }
  }
  mempool_.push_back(std::move(batch));
  return Admission::kAccepted;
}

std::optional<Block> Node::ProposeBlock(std::uint64_t height) const
{
  if (height != current_height())
  {
    return std::nullopt;
  }
  if (locked_)
  {
    return locked_;
  }
  if (mempool_.empty())
  {
    return std::nullopt;
  }
  Block b;
  b.height      = height;
  b.prev_hash   = ledger_.empty() ? Digest{} : ledger_.back().block_hash;
  b.tx_list     = mempool_;
  b.proposer_id = options_.id;
  return Rehash(std::move(b));
}

Vote Node::ProcessProposal(Block const &block, std::uint64_t round) const
{
  Vote v;
  v.voter_id   = options_.id;
  v.height     = block.height;
  v.round      = round;
  v.block_hash = block.block_hash;
  switch (options_.behavior)
  {
    case Behavior::kWrongResult:
    case Behavior::kEquivocate:
      v.verdict = Verdict::kAccept;
      break;
    case Behavior::kHonest:
    case Behavior::kSilent:
      if (locked_ && locked_->block_hash != block.block_hash)
      {
        v.verdict = Verdict::kReject;
      }
      else
      {
        auto tip   = ledger_.empty() ? Digest{} : ledger_.back().block_hash;
        auto check = CheckBlock(block, state_, *options_.registry, current_height(), tip,
                                options_.validators);
        v.verdict         = check.verdict;
        v.invalid_batches = std::move(check.invalid_batches);
      }
      break;
  }
  Sign(v);
  return v;
}

bool Node::VerifyCertificate(Block const &block) const
{
  std::set<std::string> voters;
  auto const           &vs = options_.validators;
  for (auto const &entry : block.quorum_cert)
  {
    if (std::find(vs.begin(), vs.end(), entry.voter_id) == vs.end() ||
        !voters.insert(entry.voter_id).second || !VerifyCertEntry(entry, block))
    {
      return false;
    }
  }
  return voters.size() >= quorum_;
}

bool Node::CommitBlock(Block block)
{
  auto tip = ledger_.empty() ? Digest{} : ledger_.back().block_hash;
  if (block.height != current_height() || block.prev_hash != tip ||
      ComputeBlockHash(block) != block.block_hash || block.tx_list.empty() ||
      !VerifyCertificate(block))
  {
    return false;
  }
  ReplayBlock(state_, block);
  for (auto const &batch : block.tx_list)
  {
    tx_index_[BatchHash(batch)] = L1Ref{block.height, BatchHash(batch)};
  }
  ledger_.push_back(block);
  if (block_file_ && !replaying_)
  {
    block_file_->Append(block);
  }
  ++stats_.blocks_committed;
  if (!replaying_)
  {
    AfterCommit(ledger_.back());
  }
  return true;
}

void Node::ReplayPersisted()
{
  replaying_ = true;
  for (auto &block : block_file_->Load())
  {
    if (!CommitBlock(std::move(block)))
    {
      replaying_ = false;
      throw std::runtime_error("block file " + block_file_->path().string() +
                               " does not replay at height " + std::to_string(ledger_.size()));
    }
  }
  replaying_ = false;
}

void Node::Send(std::string const &to, simnet::Message msg, VirtualTime cost)
{
  auto delay = clock_.Occupy(net_.Now(), cost);
  if (options_.behavior == Behavior::kSilent)
  {
    return;
  }
  net_.Send(options_.id, to, std::move(msg), delay);
}

void Node::Broadcast(simnet::Message const &msg, VirtualTime first_cost)
{
  clock_.Occupy(net_.Now(), first_cost);
  auto per_send = options_.cost.Scaled(options_.cost.send);
  for (auto const &v : options_.validators)
  {
    if (v != options_.id)
    {
      Send(v, msg, per_send);
    }
  }
}

void Node::ReportResult(CommitResultMsg const &result, std::string const &to)
{
  if (net_.IsRegistered(to))
  {
    Send(to, Pack(kCommitResult, result), options_.cost.Scaled(options_.cost.send));
  }
}

void Node::OnMessage(std::string const &from, simnet::Message const &msg)
{
  try
  {
    auto defer = [&](std::uint64_t height) {
      if (height <= current_height())
      {
        return false;
      }
      if (height <= current_height() + kMaxFutureHeights)
      {
        future_[height].emplace_back(from, msg);
      }
      return true;
    };
    if (msg.kind == kSubmitBatch)
    {
      HandleSubmit(from, Deserialize<SubmitBatchMsg>(msg.payload));
    }
    else if (msg.kind == kProposal)
    {
      auto m = Deserialize<ProposalMsg>(msg.payload);
      if (!defer(m.block.height))
      {
        HandleProposal(from, m);
      }
    }
    else if (msg.kind == kVote)
    {
      auto v = Deserialize<Vote>(msg.payload);
      if (v.voter_id == from && !defer(v.height))
      {
        HandleVote(v);
      }
    }
    else if (msg.kind == kCommitNotice)
    {
      auto m = Deserialize<CommitNoticeMsg>(msg.payload);
      if (!defer(m.block.height))
      {
        HandleCommitNotice(m);
      }
    }
    else if (msg.kind == kRoundTimeout)
    {
      auto m = Deserialize<RoundTimeoutMsg>(msg.payload);
      if (!defer(m.height))
      {
        HandleRoundTimeout(from, m);
      }
    }
  }
  catch (CodecError const &)
  {
    // Undecodable input from a peer is dropped.
  }
}

void Node::HandleSubmit(std::string const &from, SubmitBatchMsg const &m)
{
  clock_.Occupy(net_.Now(), options_.cost.Scaled(options_.cost.send));
  std::string why;
  if (Submit(m.batch, &why) == Admission::kRejected)
  {
    CommitResultMsg r;
    r.session_id = m.batch.session_id;
    r.batch_hash = BatchHash(m.batch);
    r.reason     = why;
    ReportResult(r, from);
    return;
  }
  MaybeStartRound();
}

void Node::MaybeStartRound()
{
  if (!round_active_ && HasWork())
  {
    EnterRound(round_);
  }
}

void Node::EnterRound(std::uint64_t round)
{
  round_        = round;
  round_active_ = true;
  ArmRoundTimer();
  auto h = current_height();
  if (ProposerFor(h, round) == options_.id && !proposed_rounds_.contains(round))
  {
    net_.SetTimer(options_.cost.block_interval, [this, h, round] { OnProposeTimer(h, round); });
  }
}

void Node::ArmRoundTimer()
{
  if (round_timer_)
  {
    net_.CancelTimer(*round_timer_);
  }
  auto h       = current_height();
  auto r       = round_;
  round_timer_ = net_.SetTimer(options_.round_timeout, [this, h, r] { OnRoundTimer(h, r); });
}

void Node::OnRoundTimer(std::uint64_t height, std::uint64_t round)
{
  if (height != current_height() || round != round_)
  {
    return;
  }
  round_timer_.reset();
  ++stats_.rounds_timed_out;
  timeouts_[round + 1].insert(options_.id);
  Broadcast(Pack(kRoundTimeout, RoundTimeoutMsg{height, round + 1}), 0);
  round_active_ = false;
  round_        = round + 1;
  MaybeStartRound();
}

void Node::HandleRoundTimeout(std::string const &from, RoundTimeoutMsg const &m)
{
  if (m.height != current_height())
  {
    return;
  }
  auto &senders = timeouts_[m.round];
  senders.insert(from);
  if (m.round > round_ && senders.size() >= f_ + 1)
  {
    AdvanceRound(m.round);
  }
}

void Node::OnProposeTimer(std::uint64_t height, std::uint64_t round)
{
  if (height != current_height() || round != round_ || proposed_rounds_.contains(round))
  {
    return;
  }
  auto block = ProposeBlock(height);
  if (!block)
  {
    return;
  }
  proposed_rounds_.insert(round);
  ++stats_.proposals_sent;

  switch (options_.behavior)
  {
    case Behavior::kHonest:
    case Behavior::kSilent:
      Broadcast(Pack(kProposal, ProposalMsg{round, *block}), 0);
      HandleProposal(options_.id, ProposalMsg{round, *block});
      break;
    case Behavior::kWrongResult:
    {
      Block bad = *block;
      for (auto &batch : bad.tx_list)
      {
        if (!batch.operations.empty())
        {
          batch.operations.front().response.body["tampered"] = true;
          break;
        }
      }
      bad = Rehash(std::move(bad));
      Broadcast(Pack(kProposal, ProposalMsg{round, bad}), 0);
      HandleProposal(options_.id, ProposalMsg{round, bad});
      break;
    }
    case Behavior::kEquivocate:
    {
      Block other = *block;
      if (other.tx_list.size() >= 2)
      {
        std::reverse(other.tx_list.begin(), other.tx_list.end());
      }
      else
      {
        other.tx_list.clear();
      }
      other = Rehash(std::move(other));

      std::vector<std::string> peers;
      for (auto const &v : options_.validators)
      {
        if (v != options_.id)
        {
          peers.push_back(v);
        }
      }
      auto per_send = options_.cost.Scaled(options_.cost.send);
      for (std::size_t i = 0; i < peers.size(); ++i)
      {
        auto const &b = i < peers.size() / 2 ? *block : other;
        Send(peers[i], Pack(kProposal, ProposalMsg{round, b}), per_send);
      }
      HandleProposal(options_.id, ProposalMsg{round, *block});
      HandleProposal(options_.id, ProposalMsg{round, other});
      break;
    }
  }
}

void Node::HandleProposal(std::string const &from, ProposalMsg const &m)
{
  auto const &block = m.block;
  auto        r     = m.round;
  if (block.height != current_height() || r < round_ || from != ProposerFor(block.height, r))
  {
    return;
  }
  bool const equivocator = options_.behavior == Behavior::kEquivocate;
  if (voted_rounds_.contains(r) && !equivocator)
  {
    return;
  }
  if (r > round_ || !round_active_)
  {
    EnterRound(r);
  }
  proposals_.try_emplace(r, block);
  known_blocks_.try_emplace(block.block_hash, block);

  auto vote = ProcessProposal(block, r);
  voted_rounds_.insert(r);
  if (honest() && vote.verdict == Verdict::kAccept)
  {
    locked_ = block;
  }
  ArmRoundTimer();

  std::size_t ops = 0;
  for (auto const &batch : block.tx_list)
  {
    ops += batch.preamble.size() + batch.operations.size();
  }
  ++stats_.votes_sent;
  Broadcast(Pack(kVote, vote), options_.cost.Scaled(options_.cost.validate) *
                                   static_cast<VirtualTime>(std::max<std::size_t>(ops, 1)));
  // Our own vote counts once the validation work above is done.
  auto ready = clock_.busy_until() - net_.Now();
  auto h     = current_height();
  net_.SetTimer(ready, [this, vote, h] {
    if (h == current_height())
    {
      HandleVote(vote);
    }
  });
  TryDecide(r, block.block_hash);
}

void Node::HandleVote(Vote const &vote)
{
  clock_.Occupy(net_.Now(), options_.cost.Scaled(options_.cost.vote_verify));
  if (vote.height != current_height())
  {
    return;
  }
  auto const &vs = options_.validators;
  if (std::find(vs.begin(), vs.end(), vote.voter_id) == vs.end() || !HasValidAuthenticator(vote))
  {
    return;
  }
  auto &tally = votes_[{vote.round, vote.block_hash}];
  if (!tally.by_voter.emplace(vote.voter_id, vote).second)
  {
    return;
  }
  TryDecide(vote.round, vote.block_hash);
}

void Node::TryDecide(std::uint64_t round, Digest const &hash)
{
  auto it = votes_.find({round, hash});
  if (it == votes_.end())
  {
    return;
  }
  auto const &tally   = it->second;
  auto        accepts = CountVerdict(tally.by_voter, Verdict::kAccept);
  if (accepts >= quorum_)
  {
    auto known = known_blocks_.find(hash);
    if (known == known_blocks_.end())
    {
      return;  // wait for a CommitNotice carrying the body
    }
    Block block = known->second;
    block.quorum_cert.clear();
    for (auto const &[voter, v] : tally.by_voter)
    {
      if (v.verdict == Verdict::kAccept)
      {
        block.quorum_cert.push_back(ToCertEntry(v));
      }
    }
    CommitBlock(std::move(block));
    return;
  }
  auto rejects = CountVerdict(tally.by_voter, Verdict::kReject);
  auto prop    = proposals_.find(round);
  if (rejects >= options_.validators.size() - quorum_ + 1 && prop != proposals_.end() &&
      prop->second.block_hash == hash && !rejected_rounds_.contains(round))
  {
    auto block = prop->second;
    RejectRound(round, block, tally);
    return;
  }
  // Nodes that never saw the rejected proposal (equivocation) still notice
  // from the votes alone that the round is over.
  if (round == round_ && round_active_ && RoundIsDead(round))
  {
    AdvanceRound(round + 1);
  }
}

void Node::RejectRound(std::uint64_t round, Block const &block, VoteTally const &tally)
{
  rejected_rounds_.insert(round);
  ++stats_.rounds_rejected;
  auto accepts = CountVerdict(tally.by_voter, Verdict::kAccept);
  auto rejects = CountVerdict(tally.by_voter, Verdict::kReject);

  for (std::uint32_t i = 0; i < block.tx_list.size(); ++i)
  {
    std::size_t marks = 0;
    for (auto const &[voter, v] : tally.by_voter)
    {
      auto const &ib = v.invalid_batches;
      if (v.verdict == Verdict::kReject && std::find(ib.begin(), ib.end(), i) != ib.end())
      {
        ++marks;
      }
    }
    if (marks < f_ + 1)
    {
      continue;
    }
    auto const &batch = block.tx_list[i];
    auto        hash  = BatchHash(batch);
    auto        it    = std::find_if(mempool_.begin(), mempool_.end(),
                                     [&](auto const &b) { return BatchHash(b) == hash; });
    if (it == mempool_.end())
    {
      continue;
    }
    mempool_.erase(it);
    ++stats_.batches_dropped;
    CommitResultMsg r;
    r.session_id = batch.session_id;
    r.batch_hash = hash;
    r.reason     = "rejected by validators: re-execution does not reproduce the batch";
    r.accepts    = accepts;
    r.rejects    = rejects;
    ReportResult(r, batch.originator_id);
  }

  if (round == round_)
  {
    AdvanceRound(round + 1);
  }
}

void Node::AdvanceRound(std::uint64_t next)
{
  if (round_timer_)
  {
    net_.CancelTimer(*round_timer_);
    round_timer_.reset();
  }
  round_active_ = false;
  round_        = next;
  MaybeStartRound();
}

bool Node::RoundIsDead(std::uint64_t round) const
{
  std::set<std::string> voters;
  std::size_t           best = 0;
  for (auto it = votes_.lower_bound({round, Digest{}}); it != votes_.end() && it->first.first == round;
       ++it)
  {
    for (auto const &[voter, v] : it->second.by_voter)
    {
      voters.insert(voter);
    }
    best = std::max(best, CountVerdict(it->second.by_voter, Verdict::kAccept));
  }
  auto unseen = options_.validators.size() - voters.size();
  return best + unseen < quorum_;
}

void Node::HandleCommitNotice(CommitNoticeMsg const &m)
{
  clock_.Occupy(net_.Now(), options_.cost.Scaled(options_.cost.vote_verify) *
                                static_cast<VirtualTime>(m.block.quorum_cert.size()));
  if (m.block.height != current_height())
  {
    return;
  }
  if (CommitBlock(m.block))
  {
    ++stats_.notices_adopted;
  }
}

void Node::AfterCommit(Block const &block)
{
  clock_.Occupy(net_.Now(), options_.cost.Scaled(options_.cost.commit));

  std::set<Digest> included;
  for (auto const &batch : block.tx_list)
  {
    included.insert(BatchHash(batch));
  }
  std::vector<BatchTransaction> keep;
  std::vector<BatchTransaction> duplicates;
  for (auto &batch : mempool_)
  {
    if (included.contains(BatchHash(batch)))
    {
      continue;
    }
    auto const *s = state_.FindSession(batch.session_id);
    if (s != nullptr && s->status == SessionStatus::kCommitted)
    {
      duplicates.push_back(std::move(batch));
    }
    else
    {
      keep.push_back(std::move(batch));
    }
  }
  mempool_ = std::move(keep);

  auto accepts = block.quorum_cert.size();
  for (auto const &batch : block.tx_list)
  {
    CommitResultMsg r;
    r.session_id = batch.session_id;
    r.batch_hash = BatchHash(batch);
    r.committed  = true;
    r.l1_ref     = L1Ref{block.height, r.batch_hash};
    r.accepts    = accepts;
    ReportResult(r, batch.originator_id);
  }
  for (auto const &batch : duplicates)
  {
    CommitResultMsg r;
    r.session_id = batch.session_id;
    r.batch_hash = BatchHash(batch);
    r.reason     = "duplicate: session " + batch.session_id + " already committed";
    ReportResult(r, batch.originator_id);
  }

  Broadcast(Pack(kCommitNotice, CommitNoticeMsg{block}), 0);

  ResetHeightState();
  auto buffered = future_.find(current_height());
  if (buffered != future_.end())
  {
    auto msgs = std::move(buffered->second);
    future_.erase(future_.begin(), std::next(buffered));
    for (auto const &[from, msg] : msgs)
    {
      OnMessage(from, msg);
    }
  }
  MaybeStartRound();
}

void Node::ResetHeightState()
{
  if (round_timer_)
  {
    net_.CancelTimer(*round_timer_);
    round_timer_.reset();
  }
  round_        = 0;
  round_active_ = false;
  locked_.reset();
  proposed_rounds_.clear();
  voted_rounds_.clear();
  rejected_rounds_.clear();
  proposals_.clear();
  known_blocks_.clear();
  votes_.clear();
  timeouts_.clear();
}

}  // namespace layerbft::l1
