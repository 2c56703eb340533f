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

#include "layerbft/core/value.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace layerbft {
namespace {

constexpr std::uint32_t kMaxLength = 1u << 28;
constexpr int           kMaxDepth  = 64;

[[noreturn]] void KindMismatch(Value::Kind want, Value::Kind got)
{
  throw CodecError("expected " + std::string{KindName(want)} + ", got " +
                   std::string{KindName(got)});
}

void PutU32(Bytes &out, std::uint32_t v)
{
  for (int shift = 24; shift >= 0; shift -= 8)
  {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void PutU64(Bytes &out, std::uint64_t v)
{
  for (int shift = 56; shift >= 0; shift -= 8)
  {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

std::uint32_t CheckedLength(std::size_t n)
{
  if (n > kMaxLength)
  {
    throw CodecError("value too large to encode");
  }
  return static_cast<std::uint32_t>(n);
}

void PutString(Bytes &out, std::string_view s)
{
  PutU32(out, CheckedLength(s.size()));
  out.insert(out.end(), s.begin(), s.end());
}

class Reader
{
public:
  explicit Reader(std::span<std::uint8_t const> in) : in_{in} {}

  bool done() const { return pos_ == in_.size(); }

  std::uint8_t U8()
  {
    Need(1);
    return in_[pos_++];
  }

  std::uint32_t U32()
  {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
    {
      v = (v << 8) | in_[pos_++];
    }
    return v;
  }

  std::uint64_t U64()
  {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
    {
      v = (v << 8) | in_[pos_++];
    }
    return v;
  }

  std::span<std::uint8_t const> Take(std::uint32_t n)
  {
    Need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::uint32_t Length()
  {
    auto n = U32();
    if (n > kMaxLength)
    {
      throw CodecError("length prefix out of range");
    }
    return n;
  }

  Value Read(int depth)
  {
    if (depth > kMaxDepth)
    {
      throw CodecError("nesting too deep");
    }
    auto tag = U8();
    switch (static_cast<Value::Kind>(tag))
    {
    case Value::Kind::kNull:
      return Value{};
    case Value::Kind::kBool:
    {
      auto b = U8();
      if (b > 1)
      {
        throw CodecError("non-canonical boolean");
      }
      return Value{b == 1};
    }
    case Value::Kind::kInt:
      return Value{static_cast<std::int64_t>(U64())};
    case Value::Kind::kString:
    {
      auto s = Take(Length());
      return Value{std::string(s.begin(), s.end())};
    }
    case Value::Kind::kBytes:
    {
      auto s = Take(Length());
      return Value{Bytes(s.begin(), s.end())};
    }
    case Value::Kind::kList:
    {
      auto n = Length();
      List l;
      l.reserve(std::min<std::uint32_t>(n, 1024));
      for (std::uint32_t i = 0; i < n; ++i)
      {
        l.push_back(Read(depth + 1));
      }
      return Value{std::move(l)};
    }
    case Value::Kind::kMap:
    {
      auto        n = Length();
      Document    m;
      std::string prev;
      for (std::uint32_t i = 0; i < n; ++i)
      {
        auto        ks = Take(Length());
        std::string key(ks.begin(), ks.end());
        if (i > 0 && !(prev < key))
        {
          throw CodecError("map keys not strictly ascending");
        }
        auto v = Read(depth + 1);
        m.emplace_hint(m.end(), key, std::move(v));
        prev = std::move(key);
      }
      return Value{std::move(m)};
    }
    }
    throw CodecError("unknown tag " + std::to_string(tag));
  }

private:
  void Need(std::size_t n) const
  {
    if (in_.size() - pos_ < n)
    {
      throw CodecError("truncated input");
    }
  }

  std::span<std::uint8_t const> in_;
  std::size_t                   pos_ = 0;
};

}  // namespace

Value::Value(std::uint64_t i)
{
  if (i > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
  {
    throw CodecError("unsigned value exceeds int64 range");
  }
  v_ = static_cast<std::int64_t>(i);
}

std::string_view KindName(Value::Kind kind)
{
  switch (kind)
  {
  case Value::Kind::kNull:
    return "null";
  case Value::Kind::kBool:
    return "bool";
  case Value::Kind::kInt:
    return "int";
  case Value::Kind::kString:
    return "string";
  case Value::Kind::kBytes:
    return "bytes";
  case Value::Kind::kList:
    return "list";
  case Value::Kind::kMap:
    return "map";
  }
  return "?";
}

bool Value::AsBool() const
{
  if (auto p = std::get_if<bool>(&v_))
  {
    return *p;
  }
  KindMismatch(Kind::kBool, kind());
}

std::int64_t Value::AsInt() const
{
  if (auto p = std::get_if<std::int64_t>(&v_))
  {
    return *p;
  }
  KindMismatch(Kind::kInt, kind());
}

std::uint64_t Value::AsUint() const
{
  auto i = AsInt();
  if (i < 0)
  {
    throw CodecError("expected non-negative integer");
  }
  return static_cast<std::uint64_t>(i);
}

std::string const &Value::AsString() const
{
  if (auto p = std::get_if<std::string>(&v_))
  {
    return *p;
  }
  KindMismatch(Kind::kString, kind());
}

Bytes const &Value::AsBytes() const
{
  if (auto p = std::get_if<Bytes>(&v_))
  {
    return *p;
  }
  KindMismatch(Kind::kBytes, kind());
}

List const &Value::AsList() const
{
  if (auto p = std::get_if<List>(&v_))
  {
    return *p;
  }
  KindMismatch(Kind::kList, kind());
}

Document const &Value::AsMap() const
{
  if (auto p = std::get_if<Document>(&v_))
  {
    return *p;
  }
  KindMismatch(Kind::kMap, kind());
}

List &Value::MutableList()
{
  if (auto p = std::get_if<List>(&v_))
  {
    return *p;
  }
  KindMismatch(Kind::kList, kind());
}

Document &Value::MutableMap()
{
  if (auto p = std::get_if<Document>(&v_))
  {
    return *p;
  }
  KindMismatch(Kind::kMap, kind());
}

Value const &Value::at(std::string_view key) const
{
  auto const &m  = AsMap();
  auto        it = m.find(key);
  if (it == m.end())
  {
    throw CodecError("missing field '" + std::string{key} + "'");
  }
  return it->second;
}

Value const *Value::find(std::string_view key) const
{
  auto p = std::get_if<Document>(&v_);
  if (p == nullptr)
  {
    return nullptr;
  }
  auto it = p->find(key);
  return it == p->end() ? nullptr : &it->second;
}

void EncodeTo(Value const &value, Bytes &out)
{
  out.push_back(static_cast<std::uint8_t>(value.kind()));
  switch (value.kind())
  {
  case Value::Kind::kNull:
    break;
  case Value::Kind::kBool:
    out.push_back(value.AsBool() ? 1 : 0);
    break;
  case Value::Kind::kInt:
    PutU64(out, static_cast<std::uint64_t>(value.AsInt()));
    break;
  case Value::Kind::kString:
    PutString(out, value.AsString());
    break;
  case Value::Kind::kBytes:
  {
    auto const &b = value.AsBytes();
    PutU32(out, CheckedLength(b.size()));
    out.insert(out.end(), b.begin(), b.end());
    break;
  }
  case Value::Kind::kList:
  {
    auto const &l = value.AsList();
    PutU32(out, CheckedLength(l.size()));
    for (auto const &item : l)
    {
      EncodeTo(item, out);
    }
    break;
  }
  case Value::Kind::kMap:
  {
    // std::map iterates in std::less<> order, which is bytewise for std::string.
    auto const &m = value.AsMap();
    PutU32(out, CheckedLength(m.size()));
    for (auto const &[k, v] : m)
    {
      PutString(out, k);
      EncodeTo(v, out);
    }
    break;
  }
  }
}

Bytes Encode(Value const &value)
{
  Bytes out;
  EncodeTo(value, out);
  return out;
}

Value Decode(std::span<std::uint8_t const> bytes)
{
  Reader r{bytes};
  auto   v = r.Read(0);
  if (!r.done())
  {
    throw CodecError("trailing bytes after value");
  }
  return v;
}

void ExpectFields(Document const &map, std::initializer_list<std::string_view> fields)
{
  if (map.size() != fields.size())
  {
    throw CodecError("unexpected field count " + std::to_string(map.size()) + ", want " +
                     std::to_string(fields.size()));
  }
  for (auto f : fields)
  {
    if (map.find(f) == map.end())
    {
      throw CodecError("missing field '" + std::string{f} + "'");
    }
  }
}

}  // namespace layerbft
