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

#include <string>
#include <vector>

#include "layerbft/sim/cluster.hpp"

namespace layerbft::sim {

struct CheckResult
{
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void Fail(std::string what) { violations.push_back(std::move(what)); }
  void Merge(CheckResult const &o)
  {
    violations.insert(violations.end(), o.violations.begin(), o.violations.end());
  }
};

/// No two honest L1 nodes hold different blocks at the same height.
CheckResult CheckSafety(Cluster const &cluster);
/// Every committed operation re-executes to its embedded response.
CheckResult CheckValidity(Cluster const &cluster);
/// Folding each honest ledger reproduces that node's state byte-for-byte.
CheckResult CheckReplay(Cluster const &cluster);
/// verify_chain holds and no certificate is below quorum.
CheckResult CheckChains(Cluster const &cluster);
/// Honest L2 nodes hold byte-identical states.
CheckResult CheckConvergence(Cluster const &cluster);
/// Each committed session appears exactly once, with its buffered
/// operations in order; aborted and active sessions appear nowhere.
CheckResult CheckAtomicity(Cluster const &cluster);

CheckResult CheckAll(Cluster const &cluster);

}  // namespace layerbft::sim
