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

#include <random>

#include "layerbft/core/digest.hpp"

namespace layerbft {
namespace {

TEST(Sha256, KnownVectors)
{
  EXPECT_EQ(Sha256(std::string_view{}).Hex(),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256(std::string_view{"abc"}).Hex(),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(HmacSha256, Rfc4231Case2)
{
  std::string key  = "Jefe";
  std::string data = "what do ya want for nothing?";
  auto        tag  = HmacSha256(std::span(reinterpret_cast<std::uint8_t const *>(key.data()), key.size()),
                                std::span(reinterpret_cast<std::uint8_t const *>(data.data()), data.size()));
  EXPECT_EQ(tag.Hex(), "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
}

TEST(Sha256, IncrementalMatchesOneShot)
{
  std::string  s = "the quick brown fox jumps over the lazy dog";
  Sha256Stream stream;
  auto const  *p = reinterpret_cast<std::uint8_t const *>(s.data());
  stream.Update(std::span(p, 10));
  stream.Update(std::span(p + 10, s.size() - 10));
  EXPECT_EQ(stream.Finish(), Sha256(s));
}

TEST(Sha256, EverySingleBitFlipChangesDigest)
{
  std::mt19937_64 rng(100);
  for (int i = 0; i < 100; ++i)
  {
    Bytes data(1 + rng() % 64);
    for (auto &b : data)
    {
      b = static_cast<std::uint8_t>(rng());
    }
    auto base = Sha256(data);
    auto pos  = rng() % data.size();
    data[pos] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
    EXPECT_NE(Sha256(data), base) << "input " << i;
  }
}

TEST(Hex, RoundTripAndRejects)
{
  Bytes b{0x00, 0x7f, 0xff};
  EXPECT_EQ(ToHex(b), "007fff");
  EXPECT_EQ(FromHex("007fff"), b);
  EXPECT_ANY_THROW(FromHex("abc"));
  EXPECT_ANY_THROW(FromHex("zz"));
  auto d = Sha256(std::string_view{"x"});
  EXPECT_EQ(Digest::FromHex(d.Hex()), d);
  EXPECT_ANY_THROW(Digest::FromHex("00"));
}

TEST(Authenticator, BoundToSignerAndMessage)
{
  Bytes msg{1, 2, 3};
  auto  tag = Authenticate("l1-0", msg);
  EXPECT_TRUE(VerifyAuthenticator("l1-0", msg, tag));
  EXPECT_FALSE(VerifyAuthenticator("l1-1", msg, tag));
  msg[0] = 9;
  EXPECT_FALSE(VerifyAuthenticator("l1-0", msg, tag));
  EXPECT_NE(NodeKey("a"), NodeKey("b"));
}

}  // namespace
}  // namespace layerbft
