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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "layerbft/sim/checks.hpp"
#include "layerbft/sim/cluster.hpp"

namespace layerbft::sim {

class ScenarioError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// One timed entry of a scenario script. `args` holds the action-specific
/// fields exactly as written in the script.
struct ScenarioAction
{
  VirtualTime    at = 0;
  std::string    action;
  nlohmann::json args;
};

/// Declarative script:
///   {"config": {...}, "run_until_ms": N,
///    "actions": [{"at_ms": t, "action": "workflow" | "request" | "commit" |
///                 "abort" | "partition" | "heal" | "set_behavior" |
///                 "drop_rate" | "restart", ...}]}
struct Scenario
{
  ClusterConfig               config;
  std::vector<ScenarioAction> actions;
  VirtualTime                 run_until = 60 * simnet::kSecond;
};

/// Reads the "config" object of a script; unknown keys are errors.
ClusterConfig ParseClusterConfig(nlohmann::json const &j);
Scenario      ParseScenario(nlohmann::json const &j);
Scenario      LoadScenario(std::filesystem::path const &path);

struct ScenarioOutcome
{
  std::vector<ClientResult> results;
  CheckResult               checks;
  Digest                    trace_digest;
  bool                      truncated = false;

  nlohmann::json ToJson(Cluster const &cluster) const;
};

/// Plays `actions` against `cluster`, runs to `run_until`, then checks all
/// invariants. Actions referring to unknown nodes or sessions throw.
ScenarioOutcome RunScenario(Cluster &cluster, std::vector<ScenarioAction> const &actions,
                            VirtualTime run_until);

}  // namespace layerbft::sim
