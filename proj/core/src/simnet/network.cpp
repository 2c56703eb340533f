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

#include "layerbft/simnet/network.hpp"

#include "layerbft/core/json.hpp"

namespace layerbft::simnet {

VirtualTime LatencyModel::BaseFor(std::string const &from, std::string const &to) const
{
  auto it = per_link_overrides.find({from, to});
  return it == per_link_overrides.end() ? base_delay : it->second;
}

void LatencyModel::Validate() const
{
  if (base_delay < 0 || jitter < 0)
  {
    throw std::invalid_argument("latency model delays must be non-negative");
  }
  for (auto const &[link, d] : per_link_overrides)
  {
    if (d < 0)
    {
      throw std::invalid_argument("negative delay override on link " + link.first + "->" +
                                  link.second);
    }
  }
}

Value ToValue(TraceEvent const &e)
{
  Document d;
  d["t"]       = e.virtual_time;
  d["seq"]     = e.seq;
  d["sent_at"] = e.sent_at;
  d["from"]    = e.from;
  d["to"]      = e.to;
  d["kind"]    = e.kind;
  d["digest"]  = ToValue(e.payload_digest);
  d["status"]  = e.status == DeliveryStatus::kDelivered ? "Delivered" : "Dropped";
  return d;
}

void Trace::WriteJsonLines(std::ostream &out) const
{
  for (auto const &e : events)
  {
    out << ToJson(ToValue(e)).dump() << '\n';
  }
}

Network::Network(LatencyModel model, std::uint64_t seed, bool capture_events)
  : model_{std::move(model)}, rng_{seed}, capture_{capture_events}
{
  model_.Validate();
}

void Network::Register(std::string endpoint, Receiver receiver)
{
  endpoints_.insert_or_assign(std::move(endpoint), std::move(receiver));
}

bool Network::IsRegistered(std::string const &endpoint) const
{
  return endpoints_.find(endpoint) != endpoints_.end();
}

void Network::Send(std::string const &from, std::string const &to, Message msg,
                   VirtualTime local_delay)
{
  Schedule(from, to, std::move(msg), now_ + std::max<VirtualTime>(local_delay, 0));
}

bool Network::Severed(std::string const &from, std::string const &to) const
{
  if (partition_.empty())
  {
    return false;
  }
  return partition_.contains(from) != partition_.contains(to);
}

void Network::Schedule(std::string const &from, std::string const &to, Message msg,
                       VirtualTime send_time)
{
  if (!IsRegistered(from))
  {
    throw RoutingError("unknown sender endpoint '" + from + "'");
  }
  if (!IsRegistered(to))
  {
    throw RoutingError("unknown destination endpoint '" + to + "'");
  }
  send_time = std::max(send_time, now_);
  auto seq  = next_seq_++;
  ++trace_.sent;

  bool drop = Severed(from, to);
  if (!drop)
  {
    auto rate = drop_rates_.find({from, to});
    if (rate != drop_rates_.end() && rate->second > 0.0)
    {
      double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
      drop     = u < rate->second;
    }
  }

  Pending p{drop ? EventKind::kDrop : EventKind::kDeliver, send_time, from, to, std::move(msg), {}};
  VirtualTime at = send_time;
  if (!drop)
  {
    VirtualTime delay = model_.BaseFor(from, to);
    if (model_.jitter > 0)
    {
      delay += static_cast<VirtualTime>(rng_() % static_cast<std::uint64_t>(model_.jitter + 1));
    }
    at          = send_time + delay;
    auto &last  = last_delivery_[{from, to}];
    at          = std::max(at, last);
    last        = at;
  }
  pending_.emplace(seq, std::move(p));
  queue_.push({at, seq});
}

Network::TimerId Network::SetTimer(VirtualTime delay, std::function<void()> fn)
{
  auto seq = next_seq_++;
  pending_.emplace(seq, Pending{EventKind::kTimer, now_, {}, {}, {}, std::move(fn)});
  queue_.push({now_ + std::max<VirtualTime>(delay, 0), seq});
  return seq;
}

void Network::CancelTimer(TimerId id)
{
  auto it = pending_.find(id);
  if (it != pending_.end() && it->second.kind == EventKind::kTimer)
  {
    pending_.erase(it);
  }
}

void Network::SetDropRate(std::string const &from, std::string const &to, double rate)
{
  drop_rates_[{from, to}] = rate;
}

void Network::Partition(std::set<std::string> group)
{
  partition_ = std::move(group);
}

void Network::Heal()
{
  partition_.clear();
}

void Network::Record(TraceEvent event)
{
  auto  encoded = Encode(ToValue(event));
  Bytes chained(trace_.digest.bytes.begin(), trace_.digest.bytes.end());
  chained.insert(chained.end(), encoded.begin(), encoded.end());
  trace_.digest = Sha256(chained);
  if (capture_)
  {
    trace_.events.push_back(std::move(event));
  }
}

bool Network::Step()
{
  while (!queue_.empty())
  {
    auto item = queue_.top();
    queue_.pop();
    auto it = pending_.find(item.seq);
    if (it == pending_.end())
    {
      continue;  // cancelled timer
    }
    auto p = std::move(it->second);
    pending_.erase(it);
    now_ = std::max(now_, item.time);

    if (p.kind == EventKind::kTimer)
    {
      p.timer();
      return true;
    }

    TraceEvent e{now_,    item.seq, p.sent_at, p.from, p.to, p.msg.kind, Sha256(p.msg.payload),
                 p.kind == EventKind::kDeliver ? DeliveryStatus::kDelivered
                                               : DeliveryStatus::kDropped};
    Record(std::move(e));
    if (p.kind == EventKind::kDrop)
    {
      ++trace_.dropped;
      return true;
    }
    ++trace_.delivered;
    // Copy the receiver: a handler may register new endpoints.
    auto receiver = endpoints_.find(p.to)->second;
    receiver(p.from, p.msg);
    return true;
  }
  return false;
}

bool Network::RunUntil(std::function<bool()> const &done, VirtualTime deadline)
{
  while (!done())
  {
    // Drop cancelled timers first so Step() cannot run past the deadline.
    while (!queue_.empty() && !pending_.contains(queue_.top().seq))
    {
      queue_.pop();
    }
    if (queue_.empty() || queue_.top().time > deadline)
    {
      // Nothing else happens before the deadline, so the wait used it up.
      now_ = std::max(now_, deadline);
      return false;
    }
    Step();
  }
  return true;
}

Trace const &Network::RunUntilQuiescent(VirtualTime max_time)
{
  while (!queue_.empty())
  {
    if (queue_.top().time > max_time)
    {
      // Skip over cancelled timers before declaring truncation.
      auto item = queue_.top();
      if (pending_.find(item.seq) == pending_.end())
      {
        queue_.pop();
        continue;
      }
      trace_.truncated = true;
      break;
    }
    Step();
  }
  return trace_;
}

}  // namespace layerbft::simnet
