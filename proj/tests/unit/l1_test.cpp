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

#include "layerbft/l1/messages.hpp"
#include "layerbft/l1/node.hpp"
#include "layerbft/l1/quorum.hpp"
#include "layerbft/l1/validation.hpp"
#include "layerbft/sim/checks.hpp"
#include "layerbft/sim/cluster.hpp"

namespace layerbft {
namespace {

using sim::Cluster;
using sim::ClusterConfig;
using simnet::Behavior;

ClusterConfig Config(std::size_t n_l1, std::uint64_t seed = 1)
{
  ClusterConfig c;
  c.n_l1 = n_l1;
  c.seed = seed;
  return c;
}

/// A labeled session that has not been committed yet, with its batch.
struct PreparedBatch
{
  std::string      session_id;
  BatchTransaction batch;
};

PreparedBatch Prepare(Cluster &c, std::string const &pkg)
{
  auto wf = c.RunWorkflow(pkg, /*commit=*/false);
  EXPECT_TRUE(wf.ok) << wf.failure;
  return {wf.session_id, c.l2(0).BuildBatch(wf.session_id)};
}

void ExpectSafe(Cluster const &c)
{
  auto r = sim::CheckSafety(c);
  r.Merge(sim::CheckValidity(c));
  r.Merge(sim::CheckChains(c));
  EXPECT_TRUE(r.ok()) << ::testing::PrintToString(r.violations);
}

TEST(L1, HonestClusterCommitsOneBlockPerSession)
{
  Cluster c(Config(4));
  auto    wf = c.RunWorkflow("pkg-1");
  ASSERT_TRUE(wf.ok) << wf.failure;
  c.Settle();
  for (std::size_t i = 0; i < c.n_l1(); ++i)
  {
    auto const &ledger = c.l1(i).ledger();
    ASSERT_EQ(ledger.size(), 1u);
    // Certificates are collected per node and may differ in membership.
    EXPECT_EQ(ledger[0].block_hash, c.l1(0).ledger()[0].block_hash);
    EXPECT_EQ(ledger[0].tx_list, c.l1(0).ledger()[0].tx_list);
    EXPECT_GE(ledger[0].quorum_cert.size(), Quorum(4));
  }
  auto const &body = wf.steps.back().response.body;
  EXPECT_EQ(body.at("status").AsString(), "Committed");
  ExpectSafe(c);
}

TEST(L1, SilentProposerIsSkippedAfterTimeout)
{
  auto cfg                = Config(4);
  cfg.behaviors["l1-0"]   = Behavior::kSilent;
  Cluster c(cfg);
  ASSERT_EQ(c.l1(1).ProposerFor(0, 0), "l1-0");
  auto wf = c.RunWorkflow("pkg-1");
  ASSERT_TRUE(wf.ok) << wf.failure;
  c.Settle();
  EXPECT_EQ(c.l1(1).ledger().at(0).proposer_id, "l1-1");
  EXPECT_GT(c.l1(1).stats().rounds_timed_out, 0u);
  ExpectSafe(c);
}

TEST(L1, EquivocatingProposerCannotSplitHonestNodes)
{
  for (std::size_t n : {4u, 7u})
  {
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
      auto cfg              = Config(n, seed);
      cfg.behaviors["l1-0"] = Behavior::kEquivocate;
      Cluster c(cfg);
      // Two sessions pending at once so the equivocator has two valid
      // orderings to hand out.
      auto a   = Prepare(c, "pkg-a");
      auto b   = Prepare(c, "pkg-b");
      auto ida = c.SendCommit(a.session_id);
      auto idb = c.SendCommit(b.session_id);
      EXPECT_TRUE(c.Await(ida).response.ok()) << n << "/" << seed;
      EXPECT_TRUE(c.Await(idb).response.ok()) << n << "/" << seed;
      c.Settle();
      ExpectSafe(c);
    }
  }
}

TEST(L1, WrongResultProposerBlockIsRejected)
{
  auto cfg              = Config(4);
  cfg.behaviors["l1-0"] = Behavior::kWrongResult;
  Cluster c(cfg);
  auto    wf = c.RunWorkflow("pkg-1");
  ASSERT_TRUE(wf.ok) << wf.failure;
  c.Settle();
  auto const &block = c.l1(1).ledger().at(0);
  EXPECT_NE(block.proposer_id, "l1-0");
  EXPECT_GT(c.l1(1).stats().rounds_rejected + c.l1(1).stats().rounds_timed_out, 0u);
  ExpectSafe(c);
}

TEST(L1, TwoAcceptsOutOfFourNeverCommit)
{
  auto cfg              = Config(4);
  cfg.behaviors["l1-2"] = Behavior::kSilent;
  cfg.behaviors["l1-3"] = Behavior::kSilent;
  Cluster c(cfg);
  auto    p  = Prepare(c, "pkg-1");
  auto    id = c.SendCommit(p.session_id);
  auto    r  = c.Await(id, 10 * simnet::kSecond);
  EXPECT_FALSE(r.completed);
  // A silent node still counts its own vote locally; only honest ledgers matter.
  EXPECT_TRUE(c.l1(0).ledger().empty());
  EXPECT_TRUE(c.l1(1).ledger().empty());
}

TEST(L1, CommitBlockRequiresQuorumCertificate)
{
  Cluster c(Config(4));
  auto    p = Prepare(c, "pkg-1");
  ASSERT_EQ(c.l1(0).Submit(p.batch), l1::Admission::kAccepted);
  auto block = c.l1(0).ProposeBlock(0);
  ASSERT_TRUE(block.has_value());

  std::vector<Vote> votes;
  for (std::size_t i = 0; i < 4; ++i)
  {
    votes.push_back(c.l1(i).ProcessProposal(*block, 0));
    EXPECT_EQ(votes.back().verdict, Verdict::kAccept);
  }
  auto two = *block;
  for (std::size_t i = 0; i < 2; ++i)
  {
    two.quorum_cert.push_back(ToCertEntry(votes[i]));
  }
  EXPECT_FALSE(c.l1(3).CommitBlock(two));

  auto forged = two;
  forged.quorum_cert.push_back({"l1-2", 0, Authenticator{}});
  EXPECT_FALSE(c.l1(3).CommitBlock(forged));

  auto three = two;
  three.quorum_cert.push_back(ToCertEntry(votes[2]));
  EXPECT_TRUE(c.l1(3).CommitBlock(three));
  EXPECT_EQ(c.l1(3).current_height(), 1u);
}

TEST(L1, DuplicateBatchIsRejected)
{
  Cluster c(Config(4));
  auto    p = Prepare(c, "pkg-1");
  ASSERT_TRUE(c.Commit(p.session_id).response.ok());
  c.Settle();
  std::string why;
  EXPECT_EQ(c.l1(1).Submit(p.batch, &why), l1::Admission::kRejected);
  EXPECT_FALSE(why.empty());

  // Replaying the same batch against post-commit state is intrinsic.
  auto state = c.l1(1).app_state();
  auto check = l1::ApplyBatchChecked(p.batch, state, c.registry(), {9, BatchHash(p.batch)});
  EXPECT_FALSE(check.ok);
  EXPECT_TRUE(check.intrinsic);
}

TEST(L1, StageViolatingBatchIsRejected)
{
  Cluster c(Config(4));
  auto    p = Prepare(c, "pkg-1");

  auto truncated = p.batch;
  truncated.operations.pop_back();  // drop the label step
  auto state = c.l1(0).app_state();
  auto check = l1::ApplyBatchChecked(truncated, state, c.registry(), {0, BatchHash(truncated)});
  EXPECT_FALSE(check.ok);
  EXPECT_TRUE(check.intrinsic);

  auto swapped = p.batch;
  std::swap(swapped.operations[1], swapped.operations[2]);
  check = l1::ApplyBatchChecked(swapped, state, c.registry(), {0, BatchHash(swapped)});
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(state, c.l1(0).app_state());

  Block b;
  b.height      = 0;
  b.tx_list     = {truncated};
  b.proposer_id = "l1-0";
  b.block_hash  = ComputeBlockHash(b);
  auto verdict  = l1::CheckBlock(b, c.l1(0).app_state(), c.registry(), 0, Digest{}, c.l1_ids());
  EXPECT_EQ(verdict.verdict, Verdict::kReject);
  EXPECT_EQ(verdict.invalid_batches, (std::vector<std::uint32_t>{0}));
}

TEST(L1, TamperedBatchIsNotIntrinsic)
{
  Cluster c(Config(4));
  auto    p        = Prepare(c, "pkg-1");
  auto    tampered = p.batch;
  tampered.operations[0].response.body["stage"] = Value{"Labeled"};
  auto state = c.l1(0).app_state();
  auto check = l1::ApplyBatchChecked(tampered, state, c.registry(), {0, BatchHash(tampered)});
  EXPECT_FALSE(check.ok);
  EXPECT_FALSE(check.intrinsic);
}

TEST(L1, GetTxAgreesAcrossHonestNodes)
{
  Cluster c(Config(7));
  auto    p = Prepare(c, "pkg-1");
  auto    r = c.Commit(p.session_id);
  ASSERT_TRUE(r.response.ok());
  c.Settle();
  auto hash = BatchHash(p.batch);
  auto ref  = c.l1(0).GetTx(hash);
  ASSERT_TRUE(ref.has_value());
  EXPECT_EQ(ref->first, p.batch);
  EXPECT_EQ(r.response.body.at("l1_ref").at("tx_hash"), ToValue(hash));
  for (std::size_t i = 1; i < c.n_l1(); ++i)
  {
    auto other = c.l1(i).GetTx(hash);
    ASSERT_TRUE(other.has_value()) << c.l1(i).id();
    EXPECT_EQ(other->second, ref->second);
  }
  EXPECT_FALSE(c.l1(0).GetTx(Digest{}).has_value());
  EXPECT_FALSE(c.l1(0).GetBlock(5).has_value());
}

TEST(L1, BlockFileReplayRestoresLedgerAndState)
{
  auto dir = std::filesystem::temp_directory_path() / "layerbft-l1-replay";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto cfg       = Config(4);
  cfg.ledger_dir = dir;

  std::vector<Block> ledger;
  AppState           state;
  {
    Cluster c(cfg);
    ASSERT_TRUE(c.RunWorkflow("pkg-1").ok);
    ASSERT_TRUE(c.RunWorkflow("pkg-2").ok);
    c.Settle();
    ledger = c.l1(2).ledger();
    state  = c.l1(2).app_state();
  }
  ASSERT_EQ(ledger.size(), 2u);

  simnet::Network net(simnet::LatencyModel{}, 1);
  l1::NodeOptions o;
  o.id         = "l1-2";
  o.validators = {"l1-0", "l1-1", "l1-2", "l1-3"};
  o.registry   = std::make_shared<Registry const>(MakeSupplyChainRegistry());
  o.block_file = dir / "l1-2.blocks";
  l1::Node restarted(o, net);
  EXPECT_EQ(restarted.ledger(), ledger);
  EXPECT_EQ(restarted.app_state(), state);
  std::filesystem::remove_all(dir);
}

TEST(L1Messages, RoundTrip)
{
  l1::CommitResultMsg m;
  m.session_id = "l2-0#1";
  m.committed  = true;
  m.l1_ref     = L1Ref{3, Digest{}};
  m.accepts    = 3;
  auto back    = Deserialize<l1::CommitResultMsg>(Serialize(m));
  EXPECT_TRUE(back.SameOutcome(m));
  auto other   = m;
  other.l1_ref = L1Ref{4, Digest{}};
  EXPECT_FALSE(other.SameOutcome(m));
}

}  // namespace
}  // namespace layerbft
