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

#include "layerbft/core/digest.hpp"
#include "layerbft/core/types.hpp"
#include "layerbft/registry/workflow.hpp"

namespace layerbft {
namespace {

Transaction SampleTx(std::string originator = "l2-0", std::uint64_t nonce = 1)
{
  Transaction tx;
  tx.request       = CreatePackageRequest("client", nonce, "pkg-1", {"a", "b"});
  tx.response      = ServiceResponse::Ok({{"package_id", Value{"pkg-1"}}});
  tx.originator_id = std::move(originator);
  Sign(tx);
  return tx;
}

BatchTransaction SampleBatch()
{
  BatchTransaction b;
  b.session_id    = "l2-0:1";
  b.originator_id = "l2-0";
  auto op         = SampleTx();
  op.request.session_id = b.session_id;
  Sign(op);
  b.operations.push_back(op);
  return b;
}

TEST(Transaction, AuthenticatorCoversEverythingButItself)
{
  auto tx = SampleTx();
  EXPECT_TRUE(HasValidAuthenticator(tx));
  auto forged = tx;
  forged.response.body["package_id"] = Value{"pkg-2"};
  EXPECT_FALSE(HasValidAuthenticator(forged));
  auto stolen          = tx;
  stolen.originator_id = "l2-1";
  EXPECT_FALSE(HasValidAuthenticator(stolen));
  auto anonymous          = tx;
  anonymous.originator_id = "";
  EXPECT_FALSE(HasValidAuthenticator(anonymous));
}

TEST(Transaction, HashIsSha256OfCanonicalEncoding)
{
  auto tx = SampleTx();
  EXPECT_EQ(TxHash(tx), Sha256(Encode(ToValue(tx))));
  EXPECT_NE(TxHash(tx), TxHash(SampleTx("l2-0", 2)));
}

TEST(Types, RoundTripThroughCanonicalBytes)
{
  auto tx = SampleTx();
  EXPECT_EQ(Deserialize<Transaction>(Serialize(tx)), tx);
  auto batch = SampleBatch();
  EXPECT_EQ(Deserialize<BatchTransaction>(Serialize(batch)), batch);

  Block b;
  b.height      = 3;
  b.prev_hash   = Sha256(std::string_view{"prev"});
  b.tx_list     = {batch};
  b.proposer_id = "l1-2";
  b.block_hash  = ComputeBlockHash(b);
  Vote v{"l1-0", 3, 0, b.block_hash, Verdict::kAccept, {}, {}};
  Sign(v);
  b.quorum_cert.push_back(ToCertEntry(v));
  EXPECT_EQ(Deserialize<Block>(Serialize(b)), b);
  EXPECT_EQ(Deserialize<Vote>(Serialize(v)), v);

  L1Ref ref{7, TxHash(tx)};
  EXPECT_EQ(Deserialize<L1Ref>(Serialize(ref)), ref);
}

TEST(Types, DecodingRejectsExtraFields)
{
  auto v = ToValue(L1Ref{1, {}});
  v.MutableMap()["extra"] = 1;
  EXPECT_THROW(Deserialize<L1Ref>(Encode(v)), CodecError);
}

TEST(Block, HashBindsEveryHeaderField)
{
  Block b;
  b.height      = 1;
  b.tx_list     = {SampleBatch()};
  b.proposer_id = "l1-0";
  auto base     = ComputeBlockHash(b);

  auto h = b;
  h.height++;
  EXPECT_NE(ComputeBlockHash(h), base);
  auto p = b;
  p.prev_hash.bytes[0] ^= 1;
  EXPECT_NE(ComputeBlockHash(p), base);
  auto q = b;
  q.proposer_id = "l1-1";
  EXPECT_NE(ComputeBlockHash(q), base);
  auto t = b;
  t.tx_list.push_back(SampleBatch());
  EXPECT_NE(ComputeBlockHash(t), base);
  // The certificate is attached after hashing.
  auto c = b;
  c.quorum_cert.push_back({"l1-0", 0, {}});
  EXPECT_EQ(ComputeBlockHash(c), base);
}

TEST(Vote, CertEntryVerifiesOnlyForItsBlock)
{
  Block b;
  b.height      = 2;
  b.proposer_id = "l1-1";
  b.tx_list     = {SampleBatch()};
  b.block_hash  = ComputeBlockHash(b);
  Vote v{"l1-3", 2, 1, b.block_hash, Verdict::kAccept, {}, {}};
  Sign(v);
  EXPECT_TRUE(HasValidAuthenticator(v));
  EXPECT_TRUE(VerifyCertEntry(ToCertEntry(v), b));

  auto other       = b;
  other.block_hash = Sha256(std::string_view{"other"});
  EXPECT_FALSE(VerifyCertEntry(ToCertEntry(v), other));

  Vote reject{"l1-3", 2, 1, b.block_hash, Verdict::kReject, {0}, {}};
  Sign(reject);
  EXPECT_FALSE(VerifyCertEntry(ToCertEntry(reject), b));
}

TEST(Batch, WellFormedness)
{
  auto good = SampleBatch();
  EXPECT_TRUE(IsWellFormed(good));
  auto empty = good;
  empty.operations.clear();
  EXPECT_FALSE(IsWellFormed(empty));
  auto foreign = good;
  foreign.operations[0].request.session_id = "l2-0:9";
  std::string why;
  EXPECT_FALSE(IsWellFormed(foreign, &why));
  EXPECT_FALSE(why.empty());
}

TEST(ErrorCodes, NamesRoundTrip)
{
  for (auto code : kAllErrorCodes)
  {
    EXPECT_EQ(ErrorCodeFromName(ErrorCodeName(code)), code);
  }
  auto r = ServiceResponse::Reject(ErrorCode::kStageOrder, "nope");
  EXPECT_EQ(r.error(), ErrorCode::kStageOrder);
  EXPECT_EQ(ServiceResponse::Ok({}).error(), ErrorCode::kNone);
  EXPECT_EQ(ServiceResponse::Error("boom").error(), ErrorCode::kInternal);
}

}  // namespace
}  // namespace layerbft
