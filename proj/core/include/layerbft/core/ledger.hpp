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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "layerbft/core/types.hpp"

namespace layerbft {

/// First structural or cryptographic defect in `ledger`, if any. Checks
/// heights, prev_hash linkage (genesis links to the zero digest), block
/// hashes, batch well-formedness, and that every block carries at least
/// Quorum(n) distinct, valid ACCEPT certificates from `validators`.
std::optional<std::string> FindChainDefect(std::span<Block const> ledger,
                                           std::span<std::string const> validators);

bool VerifyChain(std::span<Block const> ledger, std::span<std::string const> validators);

/// Ledger persistence: a sequence of records, each a big-endian u32 length
/// followed by the canonical encoding of one block.
Bytes              EncodeBlockRecord(Block const &block);
std::vector<Block> DecodeLedger(std::span<std::uint8_t const> bytes);

/// Decodes and verifies a persisted ledger; false on any decode failure.
bool VerifyLedgerBytes(std::span<std::uint8_t const> bytes, std::span<std::string const> validators);

/// Append-only block file owned by one node.
class BlockFile
{
public:
  explicit BlockFile(std::filesystem::path path);

  std::filesystem::path const &path() const { return path_; }

  void               Append(Block const &block);
  std::vector<Block> Load() const;

private:
  std::filesystem::path path_;
};

}  // namespace layerbft
