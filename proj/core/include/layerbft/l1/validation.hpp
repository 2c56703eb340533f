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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "layerbft/core/types.hpp"
#include "layerbft/registry/registry.hpp"

namespace layerbft::l1 {

struct BatchCheck
{
  bool ok = false;
  /// The batch itself is bad: authentic operations that fail re-execution,
  /// an incomplete session, or a session already committed. Such a batch
  /// can never commit and is dropped once f+1 validators flag it. A batch
  /// that fails for other reasons (forged or tampered content) points at
  /// the proposer instead.
  bool        intrinsic = false;
  std::string reason;
};

/// Marks a session as committed at `ref` in the replica state.
void ApplyCommitMarker(AppState &state, std::string const &session_id, L1Ref const &ref);

/// Validates one batch against `state` and, on success, advances `state`
/// past it (operations then commit marker). `state` is untouched on failure.
BatchCheck ApplyBatchChecked(BatchTransaction const &batch, AppState &state,
                             Registry const &registry, L1Ref const &ref);

/// Cheap admission checks done when a batch first reaches the mempool.
BatchCheck AdmitBatch(BatchTransaction const &batch, AppState const &state);

struct BlockCheck
{
  Verdict                    verdict = Verdict::kReject;
  std::vector<std::uint32_t> invalid_batches;
  std::string                reason;
};

/// Validator side of a proposal: structure, linkage, then sequential
/// re-execution of every batch against the replica state.
BlockCheck CheckBlock(Block const &block, AppState const &state, Registry const &registry,
                      std::uint64_t expected_height, Digest const &expected_prev,
                      std::vector<std::string> const &validators);

/// Applies a committed block's embedded deltas and commit markers. No
/// re-execution: this is how the ledger is replayed.
void     ReplayBlock(AppState &state, Block const &block);
AppState FoldLedger(std::span<Block const> ledger);

/// Re-executes every committed operation from the genesis state; returns a
/// description of the first operation whose embedded response differs.
std::optional<std::string> AuditLedger(std::span<Block const> ledger, Registry const &registry);

}  // namespace layerbft::l1
