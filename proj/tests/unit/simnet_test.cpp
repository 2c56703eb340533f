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

#include <gtest/gtest.h>

#include <sstream>

#include "layerbft/simnet/network.hpp"
#include "layerbft/simnet/node_support.hpp"

namespace layerbft::simnet {
namespace {

struct Inbox
{
  std::vector<std::pair<VirtualTime, std::string>> got;
};

Message Msg(std::string kind, std::uint8_t tag = 0)
{
  return Message{std::move(kind), Bytes{tag}};
}

Trace RunPingPong(std::uint64_t seed, double drop = 0.0)
{
  LatencyModel m;
  m.base_delay = 5 * kMillisecond;
  m.jitter     = 3 * kMillisecond;
  Network net(m, seed);
  int     left = 50;
  net.Register("a", [&](std::string const &, Message const &msg) {
    if (--left > 0)
    {
      net.Send("a", "b", Msg("ping", msg.payload[0]));
    }
  });
  net.Register("b", [&](std::string const &, Message const &msg) {
    net.Send("b", "a", Msg("pong", static_cast<std::uint8_t>(msg.payload[0] + 1)));
  });
  net.SetDropRate("a", "b", drop);
  for (int i = 0; i < 5; ++i)
  {
    net.Send("a", "b", Msg("ping", static_cast<std::uint8_t>(i)));
  }
  return net.RunUntilQuiescent(10 * kSecond);
}

TEST(Network, SameSeedSameTrace)
{
  auto a = RunPingPong(9);
  auto b = RunPingPong(9);
  EXPECT_EQ(a.events, b.events);
  EXPECT_EQ(a.digest, b.digest);
  EXPECT_NE(RunPingPong(10).digest, a.digest);
}

TEST(Network, EmptyRunHasEmptyTrace)
{
  Network net(LatencyModel{}, 1);
  net.Register("a", [](auto const &, auto const &) {});
  auto const &t = net.RunUntilQuiescent(kSecond);
  EXPECT_TRUE(t.events.empty());
  EXPECT_EQ(t.sent, 0u);
  EXPECT_TRUE(t.digest.IsZero());
  EXPECT_FALSE(t.truncated);
}

TEST(Network, DeliveryHonoursBaseDelayAndJitterBounds)
{
  LatencyModel m;
  m.base_delay = 10 * kMillisecond;
  m.jitter     = 2 * kMillisecond;
  Network     net(m, 3);
  VirtualTime last_sent = 0;
  std::vector<VirtualTime> delays;
  net.Register("a", [](auto const &, auto const &) {});
  net.Register("b", [&](auto const &, Message const &) { delays.push_back(net.Now()); });
  for (int i = 0; i < 200; ++i)
  {
    net.SetTimer(i * 100 * kMillisecond, [&net, &last_sent] {
      last_sent = net.Now();
      net.Send("a", "b", Msg("m"));
    });
  }
  net.RunUntilQuiescent(100 * kSecond);
  ASSERT_EQ(delays.size(), 200u);
  for (std::size_t i = 0; i < delays.size(); ++i)
  {
    auto d = delays[i] - static_cast<VirtualTime>(i) * 100 * kMillisecond;
    EXPECT_GE(d, 10 * kMillisecond);
    EXPECT_LE(d, 12 * kMillisecond);
  }
}

TEST(Network, LinksAreFifo)
{
  LatencyModel m;
  m.base_delay = kMillisecond;
  m.jitter     = 20 * kMillisecond;
  Network                   net(m, 5);
  std::vector<std::uint8_t> order;
  net.Register("a", [](auto const &, auto const &) {});
  net.Register("b", [&](auto const &, Message const &msg) { order.push_back(msg.payload[0]); });
  for (int i = 0; i < 100; ++i)
  {
    net.Send("a", "b", Msg("m", static_cast<std::uint8_t>(i)));
  }
  net.RunUntilQuiescent(kSecond);
  ASSERT_EQ(order.size(), 100u);
  EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
}

TEST(Network, DropsAreRecordedAndCounted)
{
  auto t = RunPingPong(4, 1.0);
  EXPECT_EQ(t.dropped, 5u);
  EXPECT_EQ(t.delivered, 0u);
  for (auto const &e : t.events)
  {
    EXPECT_EQ(e.status, DeliveryStatus::kDropped);
  }
  auto half = RunPingPong(4, 0.5);
  EXPECT_EQ(half.sent, half.delivered + half.dropped);
}

TEST(Network, PartitionSeversBothDirectionsUntilHealed)
{
  Network net(LatencyModel{}, 1);
  int     at_b = 0;
  net.Register("a", [](auto const &, auto const &) {});
  net.Register("b", [&](auto const &, auto const &) { ++at_b; });
  net.Partition({"a"});
  net.Send("a", "b", Msg("m"));
  net.RunUntilQuiescent(kSecond);
  EXPECT_EQ(at_b, 0);
  net.Heal();
  net.Send("a", "b", Msg("m"));
  net.RunUntilQuiescent(2 * kSecond);
  EXPECT_EQ(at_b, 1);
}

TEST(Network, TimersFireInOrderAndCanBeCancelled)
{
  Network          net(LatencyModel{}, 1);
  std::vector<int> fired;
  net.SetTimer(30, [&] { fired.push_back(3); });
  net.SetTimer(10, [&] { fired.push_back(1); });
  auto id = net.SetTimer(20, [&] { fired.push_back(2); });
  net.SetTimer(10, [&] { fired.push_back(11); });
  net.CancelTimer(id);
  net.RunUntilQuiescent(kSecond);
  EXPECT_EQ(fired, (std::vector<int>{1, 11, 3}));
  EXPECT_EQ(net.Now(), 30);
}

TEST(Network, RunUntilStopsAtDeadline)
{
  Network net(LatencyModel{}, 1);
  bool    late = false;
  net.SetTimer(kSecond, [&] { late = true; });
  auto id = net.SetTimer(10, [] {});
  net.CancelTimer(id);
  EXPECT_FALSE(net.RunUntil([] { return false; }, 500 * kMillisecond));
  EXPECT_FALSE(late);
  EXPECT_EQ(net.Now(), 500 * kMillisecond);
  auto const &t = net.RunUntilQuiescent(600 * kMillisecond);
  EXPECT_TRUE(t.truncated);
}

TEST(Network, UnknownEndpointIsRoutingError)
{
  Network net(LatencyModel{}, 1);
  net.Register("a", [](auto const &, auto const &) {});
  EXPECT_THROW(net.Send("a", "ghost", Msg("m")), RoutingError);
}

TEST(Network, TraceExportsOneJsonObjectPerEvent)
{
  auto              t = RunPingPong(2);
  std::stringstream ss;
  t.WriteJsonLines(ss);
  std::size_t lines = 0;
  for (std::string line; std::getline(ss, line);)
  {
    EXPECT_EQ(line.front(), '{');
    ++lines;
  }
  EXPECT_EQ(lines, t.events.size());
}

TEST(ProcessClock, SerializesWork)
{
  ProcessClock c;
  EXPECT_EQ(c.Occupy(0, 10), 10);
  EXPECT_EQ(c.Occupy(5, 10), 15);   // queued behind the first job
  EXPECT_EQ(c.Occupy(100, 10), 10); // idle again
}

TEST(CostModel, ContentionScalesLinearly)
{
  CostModel m;
  m.host_contention = 0.1;
  m.hosted_nodes    = 11;
  EXPECT_DOUBLE_EQ(m.Scale(), 2.0);
  EXPECT_EQ(m.Scaled(1000), 2000);
  for (auto b : {Behavior::kHonest, Behavior::kWrongResult, Behavior::kEquivocate, Behavior::kSilent})
  {
    EXPECT_EQ(BehaviorFromName(BehaviorName(b)), b);
  }
}

}  // namespace
}  // namespace layerbft::simnet
