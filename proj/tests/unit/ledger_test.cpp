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

#include <filesystem>
#include <fstream>
#include <random>

#include "layerbft/core/ledger.hpp"
#include "layerbft/l1/quorum.hpp"
#include "layerbft/sim/cluster.hpp"

namespace layerbft {
namespace {

class LedgerTest : public ::testing::Test
{
protected:
  static void SetUpTestSuite()
  {
    sim::ClusterConfig config;
    config.capture_trace = false;
    sim::Cluster cluster(config);
    for (int i = 0; i < 3; ++i)
    {
      ASSERT_TRUE(cluster.RunWorkflow("pkg-" + std::to_string(i)).ok);
    }
    cluster.Settle();
    ledger_     = new std::vector<Block>(cluster.l1(0).ledger());
    validators_ = new std::vector<std::string>(cluster.l1_ids());
  }
  static void TearDownTestSuite()
  {
    delete ledger_;
    delete validators_;
  }

  static std::vector<Block>       *ledger_;
  static std::vector<std::string> *validators_;
};

std::vector<Block>       *LedgerTest::ledger_     = nullptr;
std::vector<std::string> *LedgerTest::validators_ = nullptr;

TEST_F(LedgerTest, ProducedLedgerVerifies)
{
  ASSERT_EQ(ledger_->size(), 3u);
  EXPECT_EQ(FindChainDefect(*ledger_, *validators_), std::nullopt);
  EXPECT_TRUE((*ledger_)[0].prev_hash.IsZero());
  for (auto const &b : *ledger_)
  {
    EXPECT_GE(b.quorum_cert.size(), Quorum(validators_->size()));
  }
}

TEST_F(LedgerTest, StructuralTamperingIsDetected)
{
  auto relink = *ledger_;
  relink[1].prev_hash.bytes[5] ^= 0x10;
  EXPECT_FALSE(VerifyChain(relink, *validators_));

  auto reorder = *ledger_;
  std::swap(reorder[1], reorder[2]);
  EXPECT_FALSE(VerifyChain(reorder, *validators_));

  auto thin = *ledger_;
  thin[2].quorum_cert.resize(Quorum(validators_->size()) - 1);
  EXPECT_FALSE(VerifyChain(thin, *validators_));

  auto dup = *ledger_;
  dup[0].quorum_cert.back() = dup[0].quorum_cert.front();
  EXPECT_FALSE(VerifyChain(dup, *validators_));

  auto content = *ledger_;
  content[0].tx_list[0].operations[0].response.body["tampered"] = true;
  EXPECT_FALSE(VerifyChain(content, *validators_));

  std::vector<std::string> others = {"x-0", "x-1", "x-2", "x-3"};
  EXPECT_FALSE(VerifyChain(*ledger_, others));
}

TEST_F(LedgerTest, RecordsRoundTrip)
{
  Bytes file;
  for (auto const &b : *ledger_)
  {
    auto rec = EncodeBlockRecord(b);
    file.insert(file.end(), rec.begin(), rec.end());
  }
  EXPECT_EQ(DecodeLedger(file), *ledger_);
  EXPECT_TRUE(VerifyLedgerBytes(file, *validators_));
  file.pop_back();
  EXPECT_FALSE(VerifyLedgerBytes(file, *validators_));
}

TEST_F(LedgerTest, AnySingleByteMutationIsDetected)
{
  Bytes file;
  for (auto const &b : *ledger_)
  {
    auto rec = EncodeBlockRecord(b);
    file.insert(file.end(), rec.begin(), rec.end());
  }
  std::mt19937_64 rng(2026);
  for (int i = 0; i < 100; ++i)
  {
    auto copy = file;
    auto pos  = rng() % copy.size();
    copy[pos] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    EXPECT_FALSE(VerifyLedgerBytes(copy, *validators_)) << "offset " << pos;
  }
}

TEST_F(LedgerTest, BlockFileAppendsAndLoads)
{
  auto dir = std::filesystem::temp_directory_path() /
             ("layerbft-ledger-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  BlockFile f(dir / "node.blocks");
  EXPECT_TRUE(f.Load().empty());
  for (auto const &b : *ledger_)
  {
    f.Append(b);
  }
  EXPECT_EQ(f.Load(), *ledger_);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace layerbft
