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

#include "layerbft/sim/scenario.hpp"

#ifndef LAYERBFT_SCENARIO_DIR
#define LAYERBFT_SCENARIO_DIR LAYERBFT_GOLDEN_DIR "/../scenarios"
#endif

namespace layerbft::sim {
namespace {

using nlohmann::json;

std::size_t CountOk(ScenarioOutcome const &o, std::string const &endpoint)
{
  std::size_t n = 0;
  for (auto const &r : o.results)
  {
    n += r.endpoint == endpoint && r.response.ok() ? 1 : 0;
  }
  return n;
}

TEST(Scenario, ParsesConfigAndSortsActions)
{
  auto s = ParseScenario(json::parse(R"({
    "config": {"n_l1": 7, "n_l2": 2, "seed": 9, "base_delay_ms": 5, "jitter_ms": 0.5,
               "behaviors": {"l1-3": "Silent"}},
    "run_until_ms": 1500,
    "actions": [{"at_ms": 20, "action": "heal"}, {"at_ms": 10, "action": "heal"}]
  })"));
  EXPECT_EQ(s.config.n_l1, 7u);
  EXPECT_EQ(s.config.latency.base_delay, 5 * simnet::kMillisecond);
  EXPECT_EQ(s.config.latency.jitter, 500);
  EXPECT_EQ(s.config.behaviors.at("l1-3"), Behavior::kSilent);
  EXPECT_EQ(s.run_until, 1500 * simnet::kMillisecond);
  ASSERT_EQ(s.actions.size(), 2u);
  EXPECT_EQ(s.actions[0].at, 10 * simnet::kMillisecond);
}

TEST(Scenario, RejectsMalformedScripts)
{
  EXPECT_THROW(ParseScenario(json::parse(R"({"config": {"n_l3": 1}, "actions": []})")),
               ScenarioError);
  EXPECT_THROW(ParseScenario(json::parse(R"({"actions": [{"action": "heal"}]})")), ScenarioError);
  EXPECT_THROW(ParseScenario(json::parse(R"({"actions": [{"at_ms": -1, "action": "heal"}]})")),
               ScenarioError);
  EXPECT_THROW(
      ParseScenario(json::parse(R"({"config": {"behaviors": {"l1-0": "Sneaky"}}, "actions": []})")),
      ScenarioError);
  EXPECT_THROW(LoadScenario("/nonexistent/scenario.json"), ScenarioError);

  auto s = ParseScenario(json::parse(R"({"actions": [{"at_ms": 0, "action": "explode"}]})"));
  Cluster c(s.config);
  EXPECT_THROW(RunScenario(c, s.actions, s.run_until), ScenarioError);
}

TEST(Scenario, EquivocationScriptCommitsAndAborts)
{
  auto    s = LoadScenario(LAYERBFT_SCENARIO_DIR "/equivocation.json");
  Cluster c(s.config);
  auto    o = RunScenario(c, s.actions, s.run_until);
  EXPECT_TRUE(o.checks.ok()) << ::testing::PrintToString(o.checks.violations);
  EXPECT_EQ(CountOk(o, "commit"), 2u);
  EXPECT_EQ(CountOk(o, "abort"), 1u);
  auto j = o.ToJson(c);
  EXPECT_EQ(j.at("config"), "7-2");
  EXPECT_EQ(j.at("trace_digest"), c.network().trace().digest.Hex());
  EXPECT_TRUE(j.at("checks").at("ok").get<bool>());
}

TEST(Scenario, PartitionThenHealStillCommits)
{
  auto    s = LoadScenario(LAYERBFT_SCENARIO_DIR "/partition.json");
  Cluster c(s.config);
  auto    o = RunScenario(c, s.actions, s.run_until);
  EXPECT_TRUE(o.checks.ok()) << ::testing::PrintToString(o.checks.violations);
  EXPECT_EQ(CountOk(o, "commit"), 2u);
}

TEST(Scenario, ReplaysIdentically)
{
  auto    s = LoadScenario(LAYERBFT_SCENARIO_DIR "/equivocation.json");
  Cluster a(s.config);
  Cluster b(s.config);
  EXPECT_EQ(RunScenario(a, s.actions, s.run_until).trace_digest,
            RunScenario(b, s.actions, s.run_until).trace_digest);
}

TEST(Scenario, RawRequestsAndSessionLookup)
{
  auto s = ParseScenario(json::parse(R"({
    "run_until_ms": 5000,
    "actions": [
      {"at_ms": 0, "action": "workflow", "package_id": "pkg-1", "commit": false},
      {"at_ms": 2000, "action": "request", "route": "/sessions/{id}/scan", "package_id": "pkg-1"},
      {"at_ms": 2500, "action": "commit", "package_id": "pkg-1"},
      {"at_ms": 3000, "action": "request", "route": "/packages", "body": {"package_id": "x"}}
    ]})"));
  Cluster c(s.config);
  auto    o = RunScenario(c, s.actions, s.run_until);
  ASSERT_EQ(o.results.size(), 9u);
  EXPECT_EQ(o.results[6].response.error(), ErrorCode::kStageOrder);
  EXPECT_TRUE(o.results[7].response.ok());
  EXPECT_EQ(o.results[8].response.error(), ErrorCode::kBadRequest);
}

}  // namespace
}  // namespace layerbft::sim
