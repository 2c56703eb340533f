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

#include "layerbft/sim/cluster.hpp"

#include "layerbft/l1/quorum.hpp"
#include "layerbft/l2/messages.hpp"

namespace layerbft::sim {
namespace {

std::string EndpointForRoute(std::string_view route)
{
  if (route == kRouteCreatePackage) return "create_package";
  if (route == kRouteStartSession) return "start_session";
  if (route == kRouteScan) return "scan_package";
  if (route == kRouteValidate) return "validate_package";
  if (route == kRouteQualityCheck) return "quality_check";
  if (route == kRouteLabel) return "label_package";
  return std::string{route};
}

Behavior BehaviorOf(ClusterConfig const &c, std::string const &id)
{
  auto it = c.behaviors.find(id);
  return it == c.behaviors.end() ? Behavior::kHonest : it->second;
}

}  // namespace

Cluster::Cluster(ClusterConfig config) : config_{std::move(config)}
{
  config_.Validate();
  config_.cost.hosted_nodes = config_.n_l1 + config_.n_l2;
  registry_ = std::make_shared<Registry const>(MakeSupplyChainRegistry(config_.workflow));
  net_      = std::make_unique<simnet::Network>(config_.latency, config_.seed, config_.capture_trace);

  for (std::size_t i = 0; i < config_.n_l1; ++i)
  {
    l1_ids_.push_back(L1NodeId(i));
  }
  for (std::size_t i = 0; i < config_.n_l2; ++i)
  {
    l2_ids_.push_back(L2NodeId(i));
  }
  for (auto const &id : l1_ids_)
  {
    l1::NodeOptions o;
    o.id            = id;
    o.validators    = l1_ids_;
    o.registry      = registry_;
    o.cost          = config_.cost;
    o.round_timeout = config_.EffectiveRoundTimeout();
    o.behavior      = BehaviorOf(config_, id);
    if (config_.ledger_dir)
    {
      o.block_file = *config_.ledger_dir / (id + ".blocks");
    }
    l1_.push_back(std::make_unique<l1::Node>(std::move(o), *net_));
  }
  for (auto const &id : l2_ids_)
  {
    l2::NodeOptions o;
    o.id = id;
    for (auto const &p : l2_ids_)
    {
      if (p != id)
      {
        o.peers.push_back(p);
      }
    }
    o.l1_validators          = l1_ids_;
    o.registry               = registry_;
    o.cost                   = config_.cost;
    o.peer_timeout           = config_.EffectivePeerTimeout();
    o.accept_on_peer_timeout = config_.accept_on_peer_timeout;
    o.session_ttl            = config_.session_ttl;
    o.behavior               = BehaviorOf(config_, id);
    l2_.push_back(std::make_unique<l2::Node>(std::move(o), *net_));
  }
  net_->Register(kClientEndpoint,
                 [this](std::string const &, simnet::Message const &msg) { OnClientMessage(msg); });
}

// Nodes hold timers that point back at them; drop the network first.
Cluster::~Cluster()
{
  net_.reset();
}

bool Cluster::IsHonest(std::string const &node) const
{
  for (auto const &n : l1_)
  {
    if (n->id() == node)
    {
      return n->behavior() == Behavior::kHonest;
    }
  }
  for (auto const &n : l2_)
  {
    if (n->id() == node)
    {
      return n->behavior() == Behavior::kHonest;
    }
  }
  return false;
}

void Cluster::SetBehavior(std::string const &node, Behavior b)
{
  for (auto &n : l1_)
  {
    if (n->id() == node)
    {
      n->set_behavior(b);
      config_.behaviors[node] = b;
      return;
    }
  }
  for (auto &n : l2_)
  {
    if (n->id() == node)
    {
      if (b == Behavior::kEquivocate)
      {
        throw ConfigError("Equivocate is an L1 behavior");
      }
      n->set_behavior(b);
      config_.behaviors[node] = b;
      return;
    }
  }
  throw ConfigError("unknown node " + node);
}

void Cluster::RestartL2(std::size_t l2_index, std::size_t l1_source)
{
  l2_.at(l2_index)->RestartFromLedger(l1_.at(l1_source)->ledger());
}

std::uint64_t Cluster::Dispatch(std::string const &kind, Bytes payload, std::size_t l2_index,
                                std::string endpoint)
{
  auto id = ++next_call_;
  ClientResult r;
  r.id       = id;
  r.endpoint = std::move(endpoint);
  r.t_req    = net_->Now();
  calls_[id] = std::move(r);
  net_->Send(kClientEndpoint, l2_ids_.at(l2_index), simnet::Message{kind, std::move(payload)});
  return id;
}

std::uint64_t Cluster::SendRequest(ServiceRequest request, std::size_t l2_index,
                                   std::string endpoint)
{
  if (endpoint.empty())
  {
    endpoint = EndpointForRoute(request.route);
  }
  // The call id doubles as the wire request id.
  auto const id = next_call_ + 1;
  return Dispatch(std::string{l2::kClientRequest},
                  Serialize(l2::ClientRequestMsg{id, std::move(request)}), l2_index,
                  std::move(endpoint));
}

std::uint64_t Cluster::SendCommit(std::string const &session_id, std::size_t l2_index)
{
  auto const id = next_call_ + 1;
  return Dispatch(std::string{l2::kClientCommit},
                  Serialize(l2::ClientSessionMsg{id, session_id, client_id_}), l2_index, "commit");
}

std::uint64_t Cluster::SendAbort(std::string const &session_id, std::size_t l2_index)
{
  auto const id = next_call_ + 1;
  return Dispatch(std::string{l2::kClientAbort},
                  Serialize(l2::ClientSessionMsg{id, session_id, client_id_}), l2_index, "abort");
}

void Cluster::OnClientMessage(simnet::Message const &msg)
{
  if (msg.kind != l2::kClientResponse)
  {
    return;
  }
  auto m  = Deserialize<l2::ClientResponseMsg>(msg.payload);
  auto it = calls_.find(m.request_id);
  if (it == calls_.end() || it->second.completed)
  {
    return;
  }
  it->second.response  = std::move(m.response);
  it->second.t_res     = net_->Now();
  it->second.completed = true;
  if (auto cb = callbacks_.find(m.request_id); cb != callbacks_.end())
  {
    auto fn = std::move(cb->second);
    callbacks_.erase(cb);
    fn(it->second);
  }
}

void Cluster::OnCompletion(std::uint64_t id, std::function<void(ClientResult const &)> fn)
{
  auto it = calls_.find(id);
  if (it == calls_.end())
  {
    throw std::out_of_range("unknown call " + std::to_string(id));
  }
  if (it->second.completed)
  {
    fn(it->second);
    return;
  }
  callbacks_[id] = std::move(fn);
}

std::optional<ClientResult> Cluster::Result(std::uint64_t id) const
{
  auto it = calls_.find(id);
  if (it == calls_.end())
  {
    return std::nullopt;
  }
  return it->second;
}

ClientResult Cluster::Await(std::uint64_t id, VirtualTime max_wait)
{
  auto it = calls_.find(id);
  if (it == calls_.end())
  {
    throw std::out_of_range("unknown call " + std::to_string(id));
  }
  net_->RunUntil([&] { return it->second.completed; }, net_->Now() + max_wait);
  return it->second;
}

ClientResult Cluster::Call(ServiceRequest request, std::size_t l2_index, std::string endpoint,
                           VirtualTime max_wait)
{
  return Await(SendRequest(std::move(request), l2_index, std::move(endpoint)), max_wait);
}

ClientResult Cluster::Commit(std::string const &session_id, std::size_t l2_index,
                             VirtualTime max_wait)
{
  return Await(SendCommit(session_id, l2_index), max_wait);
}

ClientResult Cluster::Abort(std::string const &session_id, std::size_t l2_index,
                            VirtualTime max_wait)
{
  return Await(SendAbort(session_id, l2_index), max_wait);
}

void Cluster::Settle(VirtualTime max)
{
  net_->RunUntil([&] { return net_->Idle(); }, net_->Now() + max);
}

void Cluster::RunFor(VirtualTime duration)
{
  net_->RunUntil([] { return false; }, net_->Now() + duration);
}

WorkflowOutcome Cluster::RunWorkflow(std::string const &package_id, bool commit,
                                     std::size_t l2_index)
{
  WorkflowOutcome out;
  out.package_id = package_id;
  auto step      = [&](ClientResult r) {
    out.steps.push_back(std::move(r));
    auto const &last = out.steps.back();
    if (!last.completed)
    {
      out.failure = last.endpoint + ": no response";
      return false;
    }
    if (!last.response.ok())
    {
      auto const *msg = last.response.body.find("message") != last.response.body.end()
                            ? &last.response.body.at("message")
                            : nullptr;
      out.failure = last.endpoint + ": " + std::string{ErrorCodeName(last.response.error())} +
                    (msg ? " (" + msg->AsString() + ")" : "");
      return false;
    }
    return true;
  };

  if (!step(Call(CreatePackageRequest(client_id_, NextNonce(), package_id,
                                      {"item-a", "item-b", "item-c"}),
                 l2_index)))
  {
    return out;
  }
  if (!step(Call(StartSessionRequest(client_id_, NextNonce(), package_id), l2_index)))
  {
    return out;
  }
  out.session_id = out.steps.back().response.body.at("session_id").AsString();
  for (auto route : {kRouteScan, kRouteValidate, kRouteQualityCheck, kRouteLabel})
  {
    if (!step(Call(StageRequest(route, client_id_, NextNonce(), out.session_id), l2_index)))
    {
      return out;
    }
  }
  if (commit && !step(Commit(out.session_id, l2_index)))
  {
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace layerbft::sim
