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

#include "layerbft/gateway/live_cluster.hpp"

#include "layerbft/core/json.hpp"

namespace layerbft::gateway {
namespace {

nlohmann::json BlockSummary(layerbft::Block const &b)
{
  return {{"height", b.height},
          {"block_hash", b.block_hash.Hex()},
          {"prev_hash", b.prev_hash.Hex()},
          {"proposer_id", b.proposer_id},
          {"tx_count", b.tx_list.size()},
          {"cert_size", b.quorum_cert.size()}};
}

}  // namespace

LiveCluster::LiveCluster(LiveOptions options)
    : options_(std::move(options)), cluster_(std::make_unique<sim::Cluster>(options_.config))
{
  if (options_.l2_index >= cluster_->n_l2() || options_.l1_index >= cluster_->n_l1())
  {
    throw std::invalid_argument("gateway node index out of range");
  }
  if (options_.pacing == Pacing::kRealTime)
  {
    pump_ = std::thread([this] { Pump(); });
  }
}

LiveCluster::~LiveCluster()
{
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  progressed_.notify_all();
  if (pump_.joinable())
  {
    pump_.join();
  }
}

void LiveCluster::Pump()
{
  auto const tick_virtual =
      std::chrono::duration_cast<std::chrono::microseconds>(options_.tick).count();
  auto next = std::chrono::steady_clock::now();
  std::unique_lock lock(mu_);
  while (!stop_)
  {
    next += options_.tick;
    lock.unlock();
    std::this_thread::sleep_until(next);
    lock.lock();
    if (stop_)
    {
      break;
    }
    cluster_->RunFor(tick_virtual);
    progressed_.notify_all();
  }
}

LiveCluster::Outcome LiveCluster::Execute(HttpCall const &call, VirtualTime timeout)
{
  std::unique_lock lock(mu_);
  std::uint64_t    id = 0;
  switch (call.kind)
  {
  case CallKind::kService:
    id = cluster_->SendRequest(call.request, options_.l2_index, call.endpoint);
    break;
  case CallKind::kCommit: id = cluster_->SendCommit(call.session_id, options_.l2_index); break;
  case CallKind::kAbort: id = cluster_->SendAbort(call.session_id, options_.l2_index); break;
  }

  if (options_.pacing == Pacing::kDriven)
  {
    auto r = cluster_->Await(id, timeout);
    return {r.completed, r};
  }
  auto done = [&] {
    auto r = cluster_->Result(id);
    return stop_ || (r && r->completed);
  };
  progressed_.wait_for(lock, std::chrono::microseconds(timeout), done);
  auto r = cluster_->Result(id).value_or(sim::ClientResult{});
  return {r.completed, r};
}

void LiveCluster::Advance(VirtualTime duration)
{
  if (options_.pacing == Pacing::kRealTime)
  {
    return;
  }
  std::lock_guard lock(mu_);
  cluster_->RunFor(duration);
}

std::uint64_t LiveCluster::NextNonce()
{
  std::lock_guard lock(mu_);
  return cluster_->NextNonce();
}

std::string LiveCluster::node_id() const
{
  return cluster_->l2_ids().at(options_.l2_index);
}

VirtualTime LiveCluster::now() const
{
  std::lock_guard lock(mu_);
  return cluster_->now();
}

std::optional<nlohmann::json> LiveCluster::SessionStatus(std::string const &key) const
{
  std::lock_guard lock(mu_);
  try
  {
    auto status = cluster_->l2(options_.l2_index).QueryStatus(key);
    auto j      = RenderJson(status);
    auto const &state = cluster_->l2(options_.l2_index).app_state();
    if (auto const *rec = state.FindSession(status.session_id))
    {
      j["package_id"]      = rec->package_id;
      j["operation_count"] = rec->operation_count;
      j["originator_node"] = rec->originator_node;
    }
    return j;
  }
  catch (l2::NotFoundError const &)
  {
    return std::nullopt;
  }
}

std::optional<nlohmann::json> LiveCluster::Tx(std::string const &hex) const
{
  Digest hash;
  try
  {
    hash = Digest::FromHex(hex);
  }
  catch (std::exception const &)
  {
    return std::nullopt;
  }
  std::lock_guard lock(mu_);
  auto const     &l1  = cluster_->l1(options_.l1_index);
  auto            hit = l1.GetTx(hash);
  if (!hit)
  {
    return std::nullopt;
  }
  nlohmann::json j;
  j["tx_hash"]    = hash.Hex();
  j["l1_ref"]     = RenderJson(hit->second);
  j["session_id"] = hit->first.session_id;
  j["served_by"]  = l1.id();
  j["batch"]      = RenderJson(hit->first);
  auto const &index = cluster_->l2(options_.l2_index).committed_index();
  j["known_to_l2"]  = index.contains(hash);
  return j;
}

nlohmann::json LiveCluster::Blocks() const
{
  std::lock_guard lock(mu_);
  auto            out = nlohmann::json::array();
  for (auto const &b : cluster_->l1(options_.l1_index).ledger())
  {
    out.push_back(BlockSummary(b));
  }
  return out;
}

std::optional<nlohmann::json> LiveCluster::Block(std::uint64_t height) const
{
  std::lock_guard lock(mu_);
  auto            b = cluster_->l1(options_.l1_index).GetBlock(height);
  if (!b)
  {
    return std::nullopt;
  }
  return RenderJson(*b);
}

nlohmann::json LiveCluster::Health() const
{
  std::lock_guard lock(mu_);
  return {{"node_id", cluster_->l2_ids().at(options_.l2_index)},
          {"l1_node", cluster_->l1_ids().at(options_.l1_index)},
          {"config", cluster_->config().Label()},
          {"virtual_time_ms", simnet::ToMillis(cluster_->now())},
          {"l1_height", cluster_->l1(options_.l1_index).ledger().size()}};
}

}  // namespace layerbft::gateway
