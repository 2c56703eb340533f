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

#include "layerbft/sim/checks.hpp"

#include <map>

#include "layerbft/core/ledger.hpp"
#include "layerbft/l1/quorum.hpp"

namespace layerbft::sim {
namespace {

std::vector<l1::Node const *> HonestL1(Cluster const &c)
{
  std::vector<l1::Node const *> out;
  for (std::size_t i = 0; i < c.n_l1(); ++i)
  {
    if (c.l1(i).honest())
    {
      out.push_back(&c.l1(i));
    }
  }
  return out;
}

std::vector<l2::Node const *> HonestL2(Cluster const &c)
{
  std::vector<l2::Node const *> out;
  for (std::size_t i = 0; i < c.n_l2(); ++i)
  {
    if (c.l2(i).behavior() == Behavior::kHonest)
    {
      out.push_back(&c.l2(i));
    }
  }
  return out;
}

}  // namespace

CheckResult CheckSafety(Cluster const &cluster)
{
  CheckResult                  r;
  std::map<std::uint64_t, std::pair<Digest, std::string>> seen;
  for (auto const *n : HonestL1(cluster))
  {
    for (auto const &b : n->ledger())
    {
      auto [it, fresh] = seen.try_emplace(b.height, b.block_hash, n->id());
      if (!fresh && it->second.first != b.block_hash)
      {
        r.Fail("height " + std::to_string(b.height) + ": " + it->second.second + " has " +
               it->second.first.Short() + ", " + n->id() + " has " + b.block_hash.Short());
      }
    }
  }
  return r;
}

CheckResult CheckValidity(Cluster const &cluster)
{
  CheckResult r;
  for (auto const *n : HonestL1(cluster))
  {
    if (auto bad = l1::AuditLedger(n->ledger(), cluster.registry()))
    {
      r.Fail(n->id() + ": " + *bad);
    }
  }
  return r;
}

CheckResult CheckReplay(Cluster const &cluster)
{
  CheckResult r;
  for (auto const *n : HonestL1(cluster))
  {
    if (StateBytes(l1::FoldLedger(n->ledger())) != StateBytes(n->app_state()))
    {
      r.Fail(n->id() + ": ledger replay does not reproduce the node state");
    }
  }
  return r;
}

CheckResult CheckChains(Cluster const &cluster)
{
  CheckResult r;
  auto const  q = Quorum(cluster.n_l1());
  for (auto const *n : HonestL1(cluster))
  {
    if (auto defect = FindChainDefect(n->ledger(), cluster.l1_ids()))
    {
      r.Fail(n->id() + ": " + *defect);
    }
    for (auto const &b : n->ledger())
    {
      if (b.quorum_cert.size() < q)
      {
        r.Fail(n->id() + ": block " + std::to_string(b.height) + " certificate below quorum");
      }
    }
  }
  return r;
}

CheckResult CheckConvergence(Cluster const &cluster)
{
  CheckResult r;
  auto        nodes = HonestL2(cluster);
  for (std::size_t i = 1; i < nodes.size(); ++i)
  {
    if (StateBytes(nodes[i]->app_state()) != StateBytes(nodes[0]->app_state()))
    {
      r.Fail(nodes[i]->id() + " diverges from " + nodes[0]->id());
    }
  }
  return r;
}

CheckResult CheckAtomicity(Cluster const &cluster)
{
  CheckResult r;
  for (auto const *l1n : HonestL1(cluster))
  {
    std::map<std::string, std::vector<BatchTransaction const *>> placed;
    for (auto const &b : l1n->ledger())
    {
      for (auto const &batch : b.tx_list)
      {
        placed[batch.session_id].push_back(&batch);
      }
    }
    for (auto const &[sid, batches] : placed)
    {
      if (batches.size() != 1)
      {
        r.Fail(l1n->id() + ": session " + sid + " committed " + std::to_string(batches.size()) +
               " times");
      }
      for (auto const *batch : batches)
      {
        std::string why;
        if (!IsWellFormed(*batch, &why))
        {
          r.Fail(l1n->id() + ": session " + sid + " batch malformed: " + why);
        }
      }
    }

    for (auto const *l2n : HonestL2(cluster))
    {
      for (auto const &[sid, rec] : l2n->app_state().sessions)
      {
        if (rec.originator_node != l2n->id())
        {
          continue;
        }
        auto it    = placed.find(sid);
        auto count = it == placed.end() ? 0 : it->second.size();
        switch (rec.status)
        {
          case SessionStatus::kCommitted:
          {
            if (count != 1)
            {
              r.Fail("committed session " + sid + " appears " + std::to_string(count) +
                     " times on " + l1n->id());
              break;
            }
            auto session = l2n->GetSession(sid);
            auto const &ops = it->second.front()->operations;
            if (ops.size() != kWorkflowSteps.size() ||
                ListToValue(ops) != ListToValue(session.operations))
            {
              r.Fail("session " + sid + " batch on " + l1n->id() +
                     " does not match the buffered operations");
            }
            for (std::size_t i = 0; i < ops.size() && i < kWorkflowSteps.size(); ++i)
            {
              if (ops[i].request.route != kWorkflowSteps[i].first)
              {
                r.Fail("session " + sid + " operation " + std::to_string(i) + " out of order");
              }
            }
            break;
          }
          case SessionStatus::kAborted:
          case SessionStatus::kActive:
            if (count != 0)
            {
              r.Fail(std::string{SessionStatusName(rec.status)} + " session " + sid +
                     " appears in the ledger of " + l1n->id());
            }
            break;
          case SessionStatus::kCommitting:
            break;
        }
      }
    }
  }
  return r;
}

CheckResult CheckAll(Cluster const &cluster)
{
  CheckResult r;
  r.Merge(CheckSafety(cluster));
  r.Merge(CheckValidity(cluster));
  r.Merge(CheckReplay(cluster));
  r.Merge(CheckChains(cluster));
  r.Merge(CheckConvergence(cluster));
  r.Merge(CheckAtomicity(cluster));
  return r;
}

}  // namespace layerbft::sim
