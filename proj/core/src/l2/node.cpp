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

#include "layerbft/l2/node.hpp"

#include <algorithm>

#include "layerbft/l1/quorum.hpp"
#include "layerbft/l1/validation.hpp"
#include "layerbft/registry/workflow.hpp"

namespace layerbft::l2 {
namespace {

using l1::Pack;

bool Contains(std::vector<std::string> const &xs, std::string const &x)
{
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace

Value ToValue(StatusRecord const &s)
{
  Document d;
  d["session_id"] = s.session_id;
  d["status"]     = SessionStatusName(s.status);
  d["stage"]      = StageName(s.stage);
  d["l1_ref"]     = s.l1_ref ? layerbft::ToValue(*s.l1_ref) : Value{};
  return d;
}

Node::Node(NodeOptions options, simnet::Network &net) : options_{std::move(options)}, net_{net}
{
  if (!options_.registry)
  {
    throw ConfigError("node " + options_.id + " has no registry");
  }
  if (options_.l1_validators.size() >= kMinL1Nodes)
  {
    l1_f_ = FaultBudget(options_.l1_validators.size());
  }
  net_.Register(options_.id,
                [this](std::string const &from, simnet::Message const &msg) { OnMessage(from, msg); });
}

Session Node::GetSession(std::string const &session_id) const
{
  auto const *r = state_.FindSession(session_id);
  if (r == nullptr)
  {
    throw NotFoundError("unknown session " + session_id);
  }
  Session s{*r, {}};
  if (auto it = buffers_.find(session_id); it != buffers_.end())
  {
    s.operations = it->second;
  }
  return s;
}

StatusRecord Node::QueryStatus(std::string const &key) const
{
  auto const *r = state_.FindSession(key);
  if (r == nullptr && key.size() == 64)
  {
    try
    {
      auto it = committed_index_.find(Digest::FromHex(key));
      if (it != committed_index_.end())
      {
        r = state_.FindSession(it->second);
      }
    }
    catch (CodecError const &)
    {
    }
  }
  if (r == nullptr)
  {
    throw NotFoundError("unknown session or transaction " + key);
  }
  return StatusRecord{r->session_id, r->status, r->stage, r->l1_ref};
}

BatchTransaction Node::BuildBatch(std::string const &session_id) const
{
  auto const *r = state_.FindSession(session_id);
  if (r == nullptr)
  {
    throw NotFoundError("unknown session " + session_id);
  }
  BatchTransaction b;
  b.session_id    = session_id;
  b.originator_id = options_.id;
  if (auto it = package_txs_.find(r->package_id); it != package_txs_.end())
  {
    b.preamble.push_back(it->second);
  }
  if (auto it = buffers_.find(session_id); it != buffers_.end())
  {
    b.operations = it->second;
  }
  return b;
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

void Node::SendToPeers(std::string_view kind, Bytes const &payload)
{
  for (auto const &p : options_.peers)
  {
    Send(p, simnet::Message{std::string{kind}, payload}, options_.cost.Scaled(options_.cost.send));
  }
}

void Node::Respond(std::string const &client, std::uint64_t request_id, ServiceResponse response)
{
  Send(client, Pack(kClientResponse, ClientResponseMsg{request_id, std::move(response)}),
       options_.cost.Scaled(options_.cost.send));
}

void Node::OnMessage(std::string const &from, simnet::Message const &msg)
{
  try
  {
    if (msg.kind == kClientRequest)
    {
      auto m = Deserialize<ClientRequestMsg>(msg.payload);
      queue_.push_back(Work{Work::Kind::kRequest, from, m.request_id, std::move(m.request), {}});
      Pump();
    }
    else if (msg.kind == kClientCommit || msg.kind == kClientAbort)
    {
      auto m    = Deserialize<ClientSessionMsg>(msg.payload);
      auto kind = msg.kind == kClientCommit ? Work::Kind::kCommit : Work::Kind::kAbort;
      ServiceRequest who;
      who.client_id = m.client_id;
      queue_.push_back(Work{kind, from, m.request_id, std::move(who), m.session_id});
      Pump();
    }
    else if (msg.kind == kReplicateTx && Contains(options_.peers, from))
    {
      HandleReplicate(from, Deserialize<ReplicateTxMsg>(msg.payload));
    }
    else if (msg.kind == kValidationVote && Contains(options_.peers, from))
    {
      HandleVote(from, Deserialize<ValidationVoteMsg>(msg.payload));
    }
    else if (msg.kind == kApplyDelta && Contains(options_.peers, from))
    {
      HandleApplyDelta(from, Deserialize<ApplyDeltaMsg>(msg.payload));
    }
    else if (msg.kind == kSessionUpdate && Contains(options_.peers, from))
    {
      HandleSessionUpdate(from, Deserialize<SessionUpdateMsg>(msg.payload));
    }
    else if (msg.kind == l1::kCommitResult && Contains(options_.l1_validators, from))
    {
      HandleCommitResult(from, Deserialize<l1::CommitResultMsg>(msg.payload));
    }
  }
  catch (CodecError const &)
  {
    // Undecodable input is dropped.
  }
}

void Node::Pump()
{
  while (!inflight_ && !queue_.empty())
  {
    auto work = std::move(queue_.front());
    queue_.pop_front();
    switch (work.kind)
    {
      case Work::Kind::kRequest:
        StartRequest(std::move(work));
        break;
      case Work::Kind::kCommit:
        StartCommit(work);
        break;
      case Work::Kind::kAbort:
        StartAbort(work);
        break;
    }
  }
}

void Node::StartRequest(Work work)
{
  auto const &cost = options_.cost;
  clock_.Occupy(net_.Now(), cost.Scaled(cost.execute));
  auto &req = work.request;
  if (!options_.registry->Contains(req.route))
  {
    ++stats_.handler_rejections;
    Respond(work.client, work.request_id,
            ServiceResponse::Reject(ErrorCode::kNotFound, "unknown route " + req.route));
    return;
  }
  auto const &handler = options_.registry->Resolve(req.route);
  if (req.route == kRouteStartSession)
  {
    req.session_id = MakeSessionId(options_.id, next_session_++);
  }
  else if (handler.session_scoped && req.session_id)
  {
    auto const *s = state_.FindSession(*req.session_id);
    if (s != nullptr && s->originator_node != options_.id)
    {
      ++stats_.handler_rejections;
      Respond(work.client, work.request_id,
              ServiceResponse::Reject(ErrorCode::kNotOriginator,
                                      "session is served by " + s->originator_node,
                                      Document{{"originator", s->originator_node}}));
      return;
    }
  }

  auto response = options_.registry->Respond(req, state_);
  if (!response.ok())
  {
    ++stats_.handler_rejections;
    Respond(work.client, work.request_id, std::move(response));
    return;
  }

  Transaction tx{req, std::move(response), options_.id, {}};
  if (options_.behavior == Behavior::kWrongResult)
  {
    tx.response.body["tampered"] = true;
  }
  Sign(tx);

  clock_.Occupy(net_.Now(), cost.Scaled(cost.validate));
  auto self = CheckTransaction(tx, state_, *options_.registry);

  InFlight f;
  f.client          = work.client;
  f.request_id      = work.request_id;
  f.tx_hash         = TxHash(tx);
  f.response_digest = ResponseDigest(tx.response);
  f.self_valid      = self.valid;
  f.self_reason     = self.reason;
  f.tx              = std::move(tx);
  inflight_         = std::move(f);

  if (options_.peers.empty())
  {
    // Single-node L2: the validation above is the whole consensus step.
    Decide(false);
    return;
  }
  SendToPeers(kReplicateTx, Serialize(ReplicateTxMsg{inflight_->tx}));
  inflight_->timer = net_.SetTimer(options_.peer_timeout, [this] { Decide(true); });
}

void Node::Decide(bool timed_out)
{
  if (!inflight_)
  {
    return;
  }
  auto &f            = *inflight_;
  bool  all_answered = f.votes.size() == options_.peers.size();
  if (!all_answered && !timed_out)
  {
    return;
  }
  if (!timed_out && !options_.peers.empty())
  {
    net_.CancelTimer(f.timer);
  }

  List        divergent;
  List        missing;
  std::string first_reason = f.self_valid ? "" : "originator: " + f.self_reason;
  if (!f.self_valid)
  {
    divergent.push_back(options_.id);
  }
  for (auto const &p : options_.peers)
  {
    auto it = f.votes.find(p);
    if (it == f.votes.end())
    {
      missing.push_back(p);
    }
    else if (!it->second.valid || it->second.response_digest != f.response_digest)
    {
      divergent.push_back(p);
      if (first_reason.empty())
      {
        first_reason = p + ": " + (it->second.valid ? "response differs" : it->second.reason);
      }
    }
  }
  bool accept =
      divergent.empty() && (missing.empty() || options_.accept_on_peer_timeout);

  if (!options_.peers.empty())
  {
    clock_.Occupy(net_.Now(), options_.cost.Scaled(options_.cost.l2_coordination));
  }
  auto done = std::move(f);
  inflight_.reset();

  if (accept)
  {
    if (!missing.empty())
    {
      ++stats_.degraded_accepts;
    }
    Accept(done.tx);
    Respond(done.client, done.request_id, done.tx.response);
    SendToPeers(kApplyDelta, Serialize(ApplyDeltaMsg{done.tx}));
  }
  else
  {
    ++stats_.consensus_rejects;
    Document extra;
    extra["divergent"] = std::move(divergent);
    extra["missing"]   = std::move(missing);
    extra["reason"]    = first_reason.empty() ? "peer timeout" : first_reason;
    Respond(done.client, done.request_id,
            ServiceResponse::Reject(ErrorCode::kConsensusRejected,
                                    "operation rejected by simulation consensus",
                                    std::move(extra)));
  }
  Pump();
}

void Node::Accept(Transaction const &tx)
{
  state_ = ApplyDelta(std::move(state_), tx.response.state_delta);
  ++stats_.accepted;
  if (tx.request.route == kRouteCreatePackage)
  {
    if (auto it = tx.request.body.find("package_id"); it != tx.request.body.end())
    {
      package_txs_[it->second.AsString()] = tx;
    }
  }
  if (tx.request.session_id)
  {
    buffers_[*tx.request.session_id].push_back(tx);
    if (tx.originator_id == options_.id)
    {
      TouchSession(*tx.request.session_id);
    }
  }
}

void Node::HandleReplicate(std::string const &from, ReplicateTxMsg const &m)
{
  auto const &cost = options_.cost;
  clock_.Occupy(net_.Now(), cost.Scaled(cost.l2_coordination + cost.validate));
  auto              check = CheckTransaction(m.tx, state_, *options_.registry);
  ValidationVoteMsg vote;
  vote.tx_hash         = TxHash(m.tx);
  vote.valid           = check.valid;
  vote.reason          = check.reason;
  vote.response_digest = ResponseDigest(check.local_response);
  if (options_.behavior == Behavior::kWrongResult)
  {
    auto lie = check.local_response;
    lie.body["tampered"] = true;
    vote.valid           = true;
    vote.reason.clear();
    vote.response_digest = ResponseDigest(lie);
  }
  Send(from, Pack(kValidationVote, vote), cost.Scaled(cost.send));
}

void Node::HandleVote(std::string const &from, ValidationVoteMsg const &m)
{
  if (!inflight_ || m.tx_hash != inflight_->tx_hash)
  {
    return;
  }
  clock_.Occupy(net_.Now(), options_.cost.Scaled(options_.cost.vote_verify));
  inflight_->votes.emplace(from, m);
  Decide(false);
}

void Node::HandleApplyDelta(std::string const &from, ApplyDeltaMsg const &m)
{
  if (m.tx.originator_id != from)
  {
    ++stats_.refused_deltas;
    return;
  }
  // Re-checked even though this node voted on it: another originator may
  // have changed the state in between.
  clock_.Occupy(net_.Now(), options_.cost.Scaled(options_.cost.vote_verify));
  if (!CheckTransaction(m.tx, state_, *options_.registry).valid)
  {
    ++stats_.refused_deltas;
    return;
  }
  Accept(m.tx);
}

void Node::HandleSessionUpdate(std::string const &, SessionUpdateMsg const &m)
{
  if (state_.FindSession(m.session_id) == nullptr)
  {
    return;
  }
  SetStatus(m.session_id, m.status, m.l1_ref, false);
}

void Node::RestartFromLedger(std::span<Block const> ledger)
{
  if (inflight_ && inflight_->timer != 0)
  {
    net_.CancelTimer(inflight_->timer);
  }
  for (auto const &[sid, t] : ttl_timers_)
  {
    net_.CancelTimer(t);
  }
  inflight_.reset();
  queue_.clear();
  pending_commits_.clear();
  ttl_timers_.clear();
  buffers_.clear();
  package_txs_.clear();
  committed_index_.clear();

  state_ = l1::FoldLedger(ledger);
  for (auto const &block : ledger)
  {
    for (auto const &batch : block.tx_list)
    {
      buffers_[batch.session_id] = batch.operations;
    }
  }
  for (auto const &[sid, rec] : state_.sessions)
  {
    if (rec.l1_ref)
    {
      committed_index_[rec.l1_ref->tx_hash] = sid;
    }
  }
}

void Node::SetStatus(std::string const &session_id, SessionStatus status,
                     std::optional<L1Ref> l1_ref, bool broadcast)
{
  auto &rec  = state_.sessions.at(session_id);
  rec.status = status;
  rec.l1_ref = status == SessionStatus::kCommitted ? l1_ref : std::nullopt;
  if (rec.l1_ref)
  {
    committed_index_[rec.l1_ref->tx_hash] = session_id;
  }
  if (status != SessionStatus::kActive)
  {
    if (auto it = ttl_timers_.find(session_id); it != ttl_timers_.end())
    {
      net_.CancelTimer(it->second);
      ttl_timers_.erase(it);
    }
  }
  if (broadcast)
  {
    SendToPeers(kSessionUpdate, Serialize(SessionUpdateMsg{session_id, status, rec.l1_ref}));
  }
}

void Node::TouchSession(std::string const &session_id)
{
  if (auto it = ttl_timers_.find(session_id); it != ttl_timers_.end())
  {
    net_.CancelTimer(it->second);
  }
  ttl_timers_[session_id] =
      net_.SetTimer(options_.session_ttl, [this, session_id] { ExpireSession(session_id); });
}

void Node::ExpireSession(std::string const &session_id)
{
  ttl_timers_.erase(session_id);
  auto const *s = state_.FindSession(session_id);
  if (s != nullptr && s->status == SessionStatus::kActive)
  {
    ++stats_.aborts;
    SetStatus(session_id, SessionStatus::kAborted, std::nullopt, true);
  }
}

void Node::StartCommit(Work const &work)
{
  auto const &cost = options_.cost;
  clock_.Occupy(net_.Now(), cost.Scaled(cost.execute));
  auto const *s = state_.FindSession(work.session_id);
  if (s == nullptr)
  {
    Respond(work.client, work.request_id,
            ServiceResponse::Reject(ErrorCode::kNotFound, "unknown session " + work.session_id));
    return;
  }
  if (s->originator_node != options_.id)
  {
    Respond(work.client, work.request_id,
            ServiceResponse::Reject(ErrorCode::kNotOriginator,
                                    "session is served by " + s->originator_node,
                                    Document{{"originator", s->originator_node}}));
    return;
  }
  if (s->status != SessionStatus::kActive)
  {
    Respond(work.client, work.request_id,
            ServiceResponse::Reject(ErrorCode::kSessionInactive,
                                    "session is " + std::string{SessionStatusName(s->status)}));
    return;
  }
  if (s->stage != Stage::kLabeled)
  {
    Respond(work.client, work.request_id,
            ServiceResponse::Reject(ErrorCode::kStageOrder,
                                    "session must reach Labeled before commit",
                                    Document{{"stage", StageName(s->stage)}}));
    return;
  }

  auto batch = BuildBatch(work.session_id);
  SetStatus(work.session_id, SessionStatus::kCommitting, std::nullopt, true);
  pending_commits_[work.session_id] = PendingCommit{work.client, work.request_id, BatchHash(batch), {}};
  auto msg = Pack(l1::kSubmitBatch, l1::SubmitBatchMsg{batch});
  for (auto const &v : options_.l1_validators)
  {
    Send(v, msg, cost.Scaled(cost.send));
  }
}

void Node::HandleCommitResult(std::string const &from, l1::CommitResultMsg const &m)
{
  auto it = pending_commits_.find(m.session_id);
  if (it == pending_commits_.end() || it->second.batch_hash != m.batch_hash)
  {
    return;
  }
  clock_.Occupy(net_.Now(), options_.cost.Scaled(options_.cost.vote_verify));
  auto &pc = it->second;
  pc.results.insert_or_assign(from, m);
  auto matching = static_cast<std::size_t>(std::count_if(
      pc.results.begin(), pc.results.end(), [&](auto const &kv) { return kv.second.SameOutcome(m); }));
  if (matching < l1_f_ + 1)
  {
    return;
  }

  auto done = std::move(pc);
  pending_commits_.erase(it);
  if (m.committed && m.l1_ref)
  {
    ++stats_.commits;
    SetStatus(m.session_id, SessionStatus::kCommitted, m.l1_ref, true);
    Document body;
    body["session_id"] = m.session_id;
    body["status"]     = SessionStatusName(SessionStatus::kCommitted);
    body["l1_ref"]     = layerbft::ToValue(*m.l1_ref);
    body["accepts"]    = m.accepts;
    Respond(done.client, done.request_id, ServiceResponse::Ok(std::move(body)));
  }
  else
  {
    ++stats_.commit_failures;
    SetStatus(m.session_id, SessionStatus::kActive, std::nullopt, true);
    TouchSession(m.session_id);
    Document extra;
    extra["accepts"] = m.accepts;
    extra["rejects"] = m.rejects;
    extra["reason"]  = m.reason;
    Respond(done.client, done.request_id,
            ServiceResponse::Reject(ErrorCode::kCommitFailed, "L1 did not commit the session",
                                    std::move(extra)));
  }
}

void Node::StartAbort(Work const &work)
{
  clock_.Occupy(net_.Now(), options_.cost.Scaled(options_.cost.execute));
  auto const *s = state_.FindSession(work.session_id);
  if (s == nullptr)
  {
    Respond(work.client, work.request_id,
            ServiceResponse::Reject(ErrorCode::kNotFound, "unknown session " + work.session_id));
    return;
  }
  if (s->originator_node != options_.id)
  {
    Respond(work.client, work.request_id,
            ServiceResponse::Reject(ErrorCode::kNotOriginator,
                                    "session is served by " + s->originator_node));
    return;
  }
  if (s->status != SessionStatus::kActive)
  {
    Respond(work.client, work.request_id,
            ServiceResponse::Reject(ErrorCode::kSessionInactive,
                                    "session is " + std::string{SessionStatusName(s->status)}));
    return;
  }
  ++stats_.aborts;
  SetStatus(work.session_id, SessionStatus::kAborted, std::nullopt, true);
  Document body;
  body["session_id"] = work.session_id;
  body["status"]     = SessionStatusName(SessionStatus::kAborted);
  Respond(work.client, work.request_id, ServiceResponse::Ok(std::move(body)));
}

}  // namespace layerbft::l2
