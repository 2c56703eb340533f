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

#include "layerbft/core/json.hpp"
#include "layerbft/core/value.hpp"

namespace layerbft {
namespace {

// Hand-assembled bytes: tag, then big-endian payload with u32 lengths.
TEST(ValueEncoding, MatchesHandAssembledBytes)
{
  EXPECT_EQ(Encode(Value{}), (Bytes{0x00}));
  EXPECT_EQ(Encode(Value{true}), (Bytes{0x01, 0x01}));
  EXPECT_EQ(Encode(Value{false}), (Bytes{0x01, 0x00}));
  EXPECT_EQ(Encode(Value{std::int64_t{258}}),
            (Bytes{0x02, 0, 0, 0, 0, 0, 0, 0x01, 0x02}));
  EXPECT_EQ(Encode(Value{std::int64_t{-1}}),
            (Bytes{0x02, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff}));
  EXPECT_EQ(Encode(Value{"ab"}), (Bytes{0x03, 0, 0, 0, 2, 'a', 'b'}));
  EXPECT_EQ(Encode(Value{Bytes{0xde, 0xad}}), (Bytes{0x04, 0, 0, 0, 2, 0xde, 0xad}));
  EXPECT_EQ(Encode(Value{List{Value{true}, Value{}}}),
            (Bytes{0x05, 0, 0, 0, 2, 0x01, 0x01, 0x00}));
  Document d;
  d["b"] = true;
  d["a"] = nullptr;
  EXPECT_EQ(Encode(Value{d}),
            (Bytes{0x06, 0, 0, 0, 2, 0, 0, 0, 1, 'a', 0x00, 0, 0, 0, 1, 'b', 0x01, 0x01}));
}

Value RandomValue(std::mt19937_64 &rng, int depth)
{
  std::uniform_int_distribution<int> kind(0, depth > 2 ? 4 : 6);
  switch (kind(rng))
  {
  case 0: return Value{};
  case 1: return Value{rng() % 2 == 0};
  case 2: return Value{static_cast<std::int64_t>(rng())};
  case 3: return Value{std::string(rng() % 6, static_cast<char>('a' + rng() % 26))};
  case 4:
  {
    Bytes b(rng() % 5);
    for (auto &x : b)
    {
      x = static_cast<std::uint8_t>(rng());
    }
    return Value{b};
  }
  case 5:
  {
    List l;
    for (auto n = rng() % 4; n > 0; --n)
    {
      l.push_back(RandomValue(rng, depth + 1));
    }
    return Value{l};
  }
  default:
  {
    Document d;
    for (auto n = rng() % 4; n > 0; --n)
    {
      d["k" + std::to_string(rng() % 10)] = RandomValue(rng, depth + 1);
    }
    return Value{d};
  }
  }
}

TEST(ValueEncoding, RoundTripsRandomValues)
{
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i)
  {
    auto v = RandomValue(rng, 0);
    EXPECT_EQ(Decode(Encode(v)), v);
  }
}

TEST(ValueEncoding, KeyInsertionOrderDoesNotMatter)
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i)
  {
    std::vector<std::pair<std::string, Value>> fields;
    for (int k = 0; k < 6; ++k)
    {
      fields.emplace_back("f" + std::to_string(rng() % 50), RandomValue(rng, 1));
    }
    Document forward;
    Document backward;
    for (auto const &[k, v] : fields)
    {
      forward.insert_or_assign(k, v);
    }
    // Reverse insertion with first-wins semantics to mirror forward's last-wins.
    for (auto it = fields.rbegin(); it != fields.rend(); ++it)
    {
      backward.try_emplace(it->first, it->second);
    }
    EXPECT_EQ(Encode(Value{forward}), Encode(Value{backward}));
  }
}

TEST(ValueDecoding, RejectsNonCanonicalInput)
{
  EXPECT_THROW(Decode(Bytes{}), CodecError);
  EXPECT_THROW(Decode(Bytes{0x07}), CodecError);
  EXPECT_THROW(Decode(Bytes{0x01, 0x02}), CodecError);
  EXPECT_THROW(Decode(Bytes{0x00, 0x00}), CodecError);
  EXPECT_THROW(Decode(Bytes{0x03, 0, 0, 0, 5, 'a'}), CodecError);
  // Keys out of order.
  EXPECT_THROW(Decode(Bytes{0x06, 0, 0, 0, 2, 0, 0, 0, 1, 'b', 0x00, 0, 0, 0, 1, 'a', 0x00}),
               CodecError);
  // Duplicate key.
  EXPECT_THROW(Decode(Bytes{0x06, 0, 0, 0, 2, 0, 0, 0, 1, 'a', 0x00, 0, 0, 0, 1, 'a', 0x00}),
               CodecError);
}

TEST(ValueDecoding, TruncationAtEveryPrefixFails)
{
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i)
  {
    auto bytes = Encode(RandomValue(rng, 0));
    for (std::size_t n = 0; n < bytes.size(); ++n)
    {
      EXPECT_THROW(Decode(std::span(bytes.data(), n)), CodecError);
    }
  }
}

TEST(ExpectFields, ExactFieldSetRequired)
{
  Document d;
  d["a"] = 1;
  d["b"] = 2;
  EXPECT_NO_THROW(ExpectFields(d, {"a", "b"}));
  EXPECT_THROW(ExpectFields(d, {"a"}), CodecError);
  EXPECT_THROW(ExpectFields(d, {"a", "c"}), CodecError);
}

TEST(Json, RoundTripsJsonRepresentableValues)
{
  auto j = nlohmann::json::parse(R"({"x": [1, "two", true, null, {"y": -3}]})");
  EXPECT_EQ(ToJson(FromJson(j)), j);
}

TEST(Json, RejectsFloatingPoint)
{
  EXPECT_ANY_THROW(FromJson(nlohmann::json::parse("1.5")));
}

}  // namespace
}  // namespace layerbft
