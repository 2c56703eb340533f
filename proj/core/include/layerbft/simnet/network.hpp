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
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "layerbft/core/digest.hpp"

namespace layerbft::simnet {

/// Virtual time in integer microseconds.
using VirtualTime = std::int64_t;

inline constexpr VirtualTime kMicrosecond = 1;
inline constexpr VirtualTime kMillisecond = 1000;
inline constexpr VirtualTime kSecond      = 1000 * kMillisecond;

inline double ToMillis(VirtualTime t)
{
  return static_cast<double>(t) / static_cast<double>(kMillisecond);
}

struct LatencyModel
{
  VirtualTime base_delay = 10 * kMillisecond;
  /// Each hop adds a uniform draw from [0, jitter].
  VirtualTime                                              jitter = 0;
  std::map<std::pair<std::string, std::string>, VirtualTime> per_link_overrides;

  VirtualTime BaseFor(std::string const &from, std::string const &to) const;
  /// Throws std::invalid_argument on negative delays.
  void Validate() const;
};

struct Message
{
  std::string kind;
  Bytes       payload;
};

enum class DeliveryStatus : std::uint8_t
{
  kDelivered = 0,
  kDropped,
};

struct TraceEvent
{
  VirtualTime    virtual_time = 0;
  std::uint64_t  seq          = 0;
  VirtualTime    sent_at      = 0;
  std::string    from;
  std::string    to;
  std::string    kind;
  Digest         payload_digest;
  DeliveryStatus status = DeliveryStatus::kDelivered;

  friend bool operator==(TraceEvent const &, TraceEvent const &) = default;
};

Value ToValue(TraceEvent const &e);

struct Trace
{
  /// Events in (virtual_time, seq) order. Only populated when capture is on.
  std::vector<TraceEvent> events;
  std::size_t             sent      = 0;
  std::size_t             delivered = 0;
  std::size_t             dropped   = 0;
  bool                    truncated = false;
  /// Hash chain over every event: d_i = SHA256(d_{i-1} || encode(e_i)).
  Digest digest;

  void WriteJsonLines(std::ostream &out) const;
};

class RoutingError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Single-threaded discrete-event network. Messages on one directed link
/// are delivered in send order; delays and drops are drawn from a seeded
/// mt19937_64 so that a run is a pure function of its inputs.
class Network
{
public:
  using Receiver = std::function<void(std::string const &from, Message const &msg)>;
  using TimerId  = std::uint64_t;

  Network(LatencyModel model, std::uint64_t seed, bool capture_events = true);

  void Register(std::string endpoint, Receiver receiver);
  bool IsRegistered(std::string const &endpoint) const;

  VirtualTime Now() const { return now_; }

  /// Sends after `local_delay` of sender-side processing time.
  void Send(std::string const &from, std::string const &to, Message msg,
            VirtualTime local_delay = 0);

  /// Enqueues delivery at send_time + sampled delay (never before the
  /// previous delivery on the same link). Throws RoutingError for unknown
  /// endpoints.
  void Schedule(std::string const &from, std::string const &to, Message msg,
                VirtualTime send_time);

  TimerId SetTimer(VirtualTime delay, std::function<void()> fn);
  void    CancelTimer(TimerId id);

  void SetDropRate(std::string const &from, std::string const &to, double rate);
  /// Isolates `group` from every other endpoint until Heal().
  void Partition(std::set<std::string> group);
  void Heal();

  /// Processes the next event; false when the queue is empty.
  bool Step();
  /// Runs until `done()` holds or the next event lies beyond `deadline`;
  /// in the latter case the clock moves to `deadline` and false is returned.
  bool RunUntil(std::function<bool()> const &done, VirtualTime deadline);
  /// Runs until no events remain or the next one lies beyond `max_time`;
  /// in the latter case the trace is flagged truncated.
  Trace const &RunUntilQuiescent(VirtualTime max_time);

  bool        Idle() const { return pending_.empty(); }
  std::size_t pending() const { return pending_.size(); }

  Trace const &trace() const { return trace_; }

private:
  enum class EventKind : std::uint8_t
  {
    kDeliver,
    kDrop,
    kTimer,
  };

  struct Pending
  {
    EventKind             kind;
    VirtualTime           sent_at = 0;
    std::string           from;
    std::string           to;
    Message               msg;
    std::function<void()> timer;
  };

  struct QueueItem
  {
    VirtualTime   time;
    std::uint64_t seq;
    bool          operator>(QueueItem const &o) const
    {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };

  bool Severed(std::string const &from, std::string const &to) const;
  void Record(TraceEvent event);

  LatencyModel                                                model_;
  std::mt19937_64                                             rng_;
  bool                                                        capture_;
  VirtualTime                                                 now_      = 0;
  std::uint64_t                                               next_seq_ = 0;
  std::map<std::string, Receiver, std::less<>>                endpoints_;
  std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>> queue_;
  std::unordered_map<std::uint64_t, Pending>                  pending_;
  std::map<std::pair<std::string, std::string>, VirtualTime>  last_delivery_;
  std::map<std::pair<std::string, std::string>, double>       drop_rates_;
  std::set<std::string>                                       partition_;
  Trace                                                       trace_;
};

}  // namespace layerbft::simnet
