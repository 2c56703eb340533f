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

#include "layerbft/core/ledger.hpp"

#include <fstream>
#include <iterator>
#include <set>

#include "layerbft/l1/quorum.hpp"

namespace layerbft {

std::optional<std::string> FindChainDefect(std::span<Block const> ledger,
                                           std::span<std::string const> validators)
{
  std::set<std::string, std::less<>> known(validators.begin(), validators.end());
  auto const                         need = Quorum(validators.size());

  Digest prev{};
  for (std::size_t i = 0; i < ledger.size(); ++i)
  {
    auto const &b   = ledger[i];
    auto        tag = "block " + std::to_string(i) + ": ";
    if (b.height != i)
    {
      return tag + "height " + std::to_string(b.height);
    }
    if (b.prev_hash != prev)
    {
      return tag + "prev_hash does not link to previous block";
    }
    if (ComputeBlockHash(b) != b.block_hash)
    {
      return tag + "block_hash mismatch";
    }
    if (b.tx_list.empty())
    {
      return tag + "empty block";
    }
    for (auto const &batch : b.tx_list)
    {
      std::string why;
      if (!IsWellFormed(batch, &why))
      {
        return tag + why;
      }
    }
    std::set<std::string, std::less<>> voters;
    for (auto const &entry : b.quorum_cert)
    {
      if (!known.contains(entry.voter_id))
      {
        return tag + "certificate from unknown voter " + entry.voter_id;
      }
      if (!voters.insert(entry.voter_id).second)
      {
        return tag + "duplicate voter " + entry.voter_id;
      }
      if (!VerifyCertEntry(entry, b))
      {
        return tag + "bad vote authenticator from " + entry.voter_id;
      }
    }
    if (voters.size() < need)
    {
      return tag + "quorum certificate has " + std::to_string(voters.size()) + " votes, need " +
             std::to_string(need);
    }
    prev = b.block_hash;
  }
  return std::nullopt;
}

bool VerifyChain(std::span<Block const> ledger, std::span<std::string const> validators)
{
  return !FindChainDefect(ledger, validators).has_value();
}

Bytes EncodeBlockRecord(Block const &block)
{
  auto  body = Serialize(block);
  Bytes out;
  out.reserve(body.size() + 4);
  auto n = static_cast<std::uint32_t>(body.size());
  for (int shift = 24; shift >= 0; shift -= 8)
  {
    out.push_back(static_cast<std::uint8_t>(n >> shift));
  }
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::vector<Block> DecodeLedger(std::span<std::uint8_t const> bytes)
{
  std::vector<Block> out;
  std::size_t        pos = 0;
  while (pos < bytes.size())
  {
    if (bytes.size() - pos < 4)
    {
      throw CodecError("truncated block record header");
    }
    std::uint32_t n = 0;
    for (int i = 0; i < 4; ++i)
    {
      n = (n << 8) | bytes[pos++];
    }
    if (bytes.size() - pos < n)
    {
      throw CodecError("truncated block record");
    }
    out.push_back(Deserialize<Block>(bytes.subspan(pos, n)));
    pos += n;
  }
  return out;
}

bool VerifyLedgerBytes(std::span<std::uint8_t const> bytes, std::span<std::string const> validators)
{
  try
  {
    auto ledger = DecodeLedger(bytes);
    return VerifyChain(ledger, validators);
  }
  catch (CodecError const &)
  {
    return false;
  }
}

BlockFile::BlockFile(std::filesystem::path path) : path_{std::move(path)} {}

void BlockFile::Append(Block const &block)
{
  auto          record = EncodeBlockRecord(block);
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out)
  {
    throw std::runtime_error("cannot open block file " + path_.string());
  }
  out.write(reinterpret_cast<char const *>(record.data()),
            static_cast<std::streamsize>(record.size()));
  out.flush();
  if (!out)
  {
    throw std::runtime_error("write failed on block file " + path_.string());
  }
}

std::vector<Block> BlockFile::Load() const
{
  std::ifstream in(path_, std::ios::binary);
  if (!in)
  {
    return {};
  }
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return DecodeLedger(bytes);
}

}  // namespace layerbft
