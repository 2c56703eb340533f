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

#include "layerbft/l1/validation.hpp"

#include <algorithm>
#include <set>

#include "layerbft/l2/validation.hpp"
#include "layerbft/registry/workflow.hpp"

namespace layerbft::l1 {
namespace {

bool AllAuthentic(BatchTransaction const &batch)
{
  for (auto const *ops : {&batch.preamble, &batch.operations})
  {
    for (auto const &tx : *ops)
    {
      if (!HasValidAuthenticator(tx))
      {
        return false;
      }
    }
  }
  return true;
}

bool Committed(AppState const &state, std::string const &session_id)
{
  auto const *s = state.FindSession(session_id);
  return s != nullptr && s->status == SessionStatus::kCommitted;
}

}  // namespace

void ApplyCommitMarker(AppState &state, std::string const &session_id, L1Ref const &ref)
{
  auto it = state.sessions.find(session_id);
  if (it == state.sessions.end())
  {
    throw CodecError("commit marker for unknown session " + session_id);
  }
  it->second.status = SessionStatus::kCommitted;
  it->second.l1_ref = ref;
}

BatchCheck AdmitBatch(BatchTransaction const &batch, AppState const &state)
{
  std::string why;
  if (!IsWellFormed(batch, &why))
  {
    return {false, true, "malformed batch: " + why};
  }
  if (!AllAuthentic(batch))
  {
    return {false, true, "batch carries an invalid authenticator"};
  }
  if (Committed(state, batch.session_id))
  {
    return {false, true, "duplicate: session " + batch.session_id + " already committed"};
  }
  return {true, false, {}};
}

BatchCheck ApplyBatchChecked(BatchTransaction const &batch, AppState &state,
                             Registry const &registry, L1Ref const &ref)
{
  std::string why;
  if (!IsWellFormed(batch, &why))
  {
    return {false, false, "malformed batch: " + why};
  }
  if (!AllAuthentic(batch))
  {
    return {false, false, "batch carries an invalid authenticator"};
  }
  if (Committed(state, batch.session_id))
  {
    return {false, true, "duplicate: session " + batch.session_id + " already committed"};
  }

  AppState work = state;
  auto     run  = [&](std::vector<Transaction> const &ops, char const *what) -> BatchCheck {
    for (std::size_t i = 0; i < ops.size(); ++i)
    {
      auto check = l2::CheckTransaction(ops[i], work, registry);
      if (!check.valid)
      {
        return {false, true, std::string{what} + " " + std::to_string(i) + ": " + check.reason};
      }
      work = ApplyDelta(std::move(work), ops[i].response.state_delta);
    }
    return {true, false, {}};
  };
  if (auto r = run(batch.preamble, "preamble op"); !r.ok)
  {
    return r;
  }
  if (auto r = run(batch.operations, "operation"); !r.ok)
  {
    return r;
  }
  auto const *session = work.FindSession(batch.session_id);
  if (session == nullptr || session->stage != Stage::kLabeled)
  {
    return {false, true, "session " + batch.session_id + " has not completed its workflow"};
  }
  ApplyCommitMarker(work, batch.session_id, ref);
  state = std::move(work);
  return {true, false, {}};
}

BlockCheck CheckBlock(Block const &block, AppState const &state, Registry const &registry,
                      std::uint64_t expected_height, Digest const &expected_prev,
                      std::vector<std::string> const &validators)
{
  BlockCheck out;
  if (block.height != expected_height || block.prev_hash != expected_prev)
  {
    out.reason = "block does not extend the local tip";
    return out;
  }
  // A locked block is re-proposed unchanged by later proposers, so only
  // membership is checked here.
  if (std::find(validators.begin(), validators.end(), block.proposer_id) == validators.end())
  {
    out.reason = "unknown proposer " + block.proposer_id;
    return out;
  }
  if (ComputeBlockHash(block) != block.block_hash)
  {
    out.reason = "block hash mismatch";
    return out;
  }
  if (block.tx_list.empty())
  {
    out.reason = "empty block";
    return out;
  }
  if (!block.quorum_cert.empty())
  {
    out.reason = "proposal already carries a certificate";
    return out;
  }

  std::set<std::string> sessions;
  AppState              work = state;
  bool                  proposer_fault = false;
  for (std::uint32_t i = 0; i < block.tx_list.size(); ++i)
  {
    auto const &batch = block.tx_list[i];
    if (!sessions.insert(batch.session_id).second)
    {
      proposer_fault = true;
      out.reason     = "session " + batch.session_id + " appears twice";
      continue;
    }
    L1Ref ref{block.height, BatchHash(batch)};
    auto  r = ApplyBatchChecked(batch, work, registry, ref);
    if (!r.ok)
    {
      if (r.intrinsic)
      {
        out.invalid_batches.push_back(i);
      }
      else
      {
        proposer_fault = true;
      }
      if (out.reason.empty())
      {
        out.reason = "batch " + std::to_string(i) + ": " + r.reason;
      }
    }
  }
  if (!proposer_fault && out.invalid_batches.empty())
  {
    out.verdict = Verdict::kAccept;
    out.reason.clear();
  }
  return out;
}

void ReplayBlock(AppState &state, Block const &block)
{
  for (auto const &batch : block.tx_list)
  {
    for (auto const *ops : {&batch.preamble, &batch.operations})
    {
      for (auto const &tx : *ops)
      {
        for (auto const &w : tx.response.state_delta)
        {
          ApplyWrite(state, w);
        }
      }
    }
    ApplyCommitMarker(state, batch.session_id, L1Ref{block.height, BatchHash(batch)});
  }
}

AppState FoldLedger(std::span<Block const> ledger)
{
  AppState state;
  for (auto const &b : ledger)
  {
    ReplayBlock(state, b);
  }
  return state;
}

std::optional<std::string> AuditLedger(std::span<Block const> ledger, Registry const &registry)
{
  AppState state;
  for (auto const &block : ledger)
  {
    for (std::size_t i = 0; i < block.tx_list.size(); ++i)
    {
      auto const &batch = block.tx_list[i];
      auto r = ApplyBatchChecked(batch, state, registry, L1Ref{block.height, BatchHash(batch)});
      if (!r.ok)
      {
        return "height " + std::to_string(block.height) + " batch " + std::to_string(i) + ": " +
               r.reason;
      }
    }
  }
  return std::nullopt;
}

}  // namespace layerbft::l1
