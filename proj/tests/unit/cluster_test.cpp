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

#include "layerbft/l1/quorum.hpp"
#include "layerbft/sim/checks.hpp"
#include "layerbft/sim/cluster.hpp"

namespace layerbft::sim {
namespace {

TEST(ClusterConfig, ValidatesSizes)
{
  ClusterConfig c;
  EXPECT_EQ(c.Label(), "4-1");
  EXPECT_EQ(c.fault_budget(), 1u);
  c.n_l1 = 3;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.n_l1 = 4;
  c.n_l2 = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(ClusterConfig, RoundTimeoutIsTwentyHopsStretchedByContention)
{
  ClusterConfig c;
  c.n_l1                    = 7;
  c.n_l2                    = 2;
  c.cost.hosted_nodes       = 9;
  c.cost.host_contention    = 0.25;
  c.latency.base_delay      = 10 * simnet::kMillisecond;
  EXPECT_EQ(c.EffectiveRoundTimeout(), 20 * 10 * simnet::kMillisecond * 3);
  c.round_timeout = 123;
  EXPECT_EQ(c.EffectiveRoundTimeout(), 123);
}

TEST(Cluster, WorkflowReportsEveryEndpointInOrder)
{
  Cluster c(ClusterConfig{});
  auto    wf = c.RunWorkflow("pkg-1");
  ASSERT_TRUE(wf.ok) << wf.failure;
  ASSERT_EQ(wf.steps.size(), std::size(kEndpointNames));
  for (std::size_t i = 0; i < wf.steps.size(); ++i)
  {
    EXPECT_EQ(wf.steps[i].endpoint, kEndpointNames[i]);
    EXPECT_GT(wf.steps[i].latency(), 0);
    if (i > 0)
    {
      EXPECT_GE(wf.steps[i].t_req, wf.steps[i - 1].t_res);
    }
  }
  c.Settle();
  EXPECT_TRUE(CheckAll(c).ok()) << ::testing::PrintToString(CheckAll(c).violations);
}

TEST(Cluster, StopsAtFirstFailingStep)
{
  Cluster c(ClusterConfig{});
  ASSERT_TRUE(c.RunWorkflow("pkg-1").ok);
  auto again = c.RunWorkflow("pkg-1");
  EXPECT_FALSE(again.ok);
  EXPECT_EQ(again.steps.size(), 1u);
  EXPECT_EQ(again.steps[0].response.error(), ErrorCode::kDuplicate);
}

Digest RunDigest(std::uint64_t seed)
{
  ClusterConfig cfg;
  cfg.n_l1 = 7;
  cfg.n_l2 = 2;
  cfg.seed = seed;
  Cluster c(cfg);
  c.RunWorkflow("pkg-1");
  c.RunWorkflow("pkg-2");
  c.Settle();
  return c.network().trace().digest;
}

TEST(Cluster, RunsAreReproducible)
{
  EXPECT_EQ(RunDigest(5), RunDigest(5));
  EXPECT_NE(RunDigest(5), RunDigest(6));
}

TEST(Cluster, BehaviorCanChangeMidRun)
{
  Cluster c(ClusterConfig{});
  ASSERT_TRUE(c.RunWorkflow("pkg-1").ok);
  c.SetBehavior("l1-1", Behavior::kSilent);
  EXPECT_FALSE(c.IsHonest("l1-1"));
  ASSERT_TRUE(c.RunWorkflow("pkg-2").ok);
  c.Settle();
  EXPECT_TRUE(CheckAll(c).ok());
  EXPECT_THROW(c.SetBehavior("l9-9", Behavior::kSilent), ConfigError);
}

TEST(Checks, CheckResultMerges)
{
  CheckResult a;
  EXPECT_TRUE(a.ok());
  a.Fail("x");
  CheckResult b;
  b.Fail("y");
  a.Merge(b);
  EXPECT_EQ(a.violations, (std::vector<std::string>{"x", "y"}));
}

}  // namespace
}  // namespace layerbft::sim
