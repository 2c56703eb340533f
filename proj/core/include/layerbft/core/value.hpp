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
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace layerbft {

using Bytes = std::vector<std::uint8_t>;

/// Raised when a value cannot be encoded, decoded, or converted to a domain
/// type. Decoding is strict: any non-canonical input is a CodecError.
class CodecError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class Value;
using List     = std::vector<Value>;
using Document = std::map<std::string, Value, std::less<>>;

/// Self-describing document value. This is the only thing that ever gets
/// hashed or compared across nodes, so every kind has exactly one encoding.
class Value
{
public:
  enum class Kind : std::uint8_t
  {
    kNull = 0,
    kBool,
    kInt,
    kString,
    kBytes,
    kList,
    kMap,
  };

  Value() = default;
  Value(std::nullptr_t) {}
  Value(bool b) : v_{b} {}
  Value(int i) : v_{static_cast<std::int64_t>(i)} {}
  Value(std::int64_t i) : v_{i} {}
  Value(std::uint64_t i);
  Value(char const *s) : v_{std::string{s}} {}
  Value(std::string s) : v_{std::move(s)} {}
  Value(std::string_view s) : v_{std::string{s}} {}
  Value(Bytes b) : v_{std::move(b)} {}
  Value(List l) : v_{std::move(l)} {}
  Value(Document d) : v_{std::move(d)} {}

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_null() const { return kind() == Kind::kNull; }

  bool                 AsBool() const;
  std::int64_t         AsInt() const;
  std::uint64_t        AsUint() const;
  std::string const &  AsString() const;
  Bytes const &        AsBytes() const;
  List const &         AsList() const;
  Document const &     AsMap() const;
  List &               MutableList();
  Document &           MutableMap();

  /// Map field lookup; throws CodecError when absent or not a map.
  Value const &at(std::string_view key) const;
  Value const *find(std::string_view key) const;

  friend bool operator==(Value const &, Value const &) = default;

private:
  std::variant<std::monostate, bool, std::int64_t, std::string, Bytes, List, Document> v_;
};

std::string_view KindName(Value::Kind kind);

/// Canonical binary encoding: one tag byte per value, big-endian fixed-width
/// integers, u32 length prefixes, map entries in lexicographic key order.
Bytes Encode(Value const &value);
void  EncodeTo(Value const &value, Bytes &out);

/// Strict inverse of Encode. Rejects unknown tags, truncation, trailing
/// bytes, unsorted or duplicate keys, and non-canonical booleans.
Value Decode(std::span<std::uint8_t const> bytes);

/// Reads exactly the fields listed; any extra or missing field is an error.
/// Used by every FromValue overload so decoding stays canonical.
void ExpectFields(Document const &map, std::initializer_list<std::string_view> fields);

template <typename T>
Bytes Serialize(T const &x)
{
  return Encode(ToValue(x));
}

template <typename T>
T Deserialize(std::span<std::uint8_t const> bytes)
{
  T out{};
  FromValue(Decode(bytes), out);
  return out;
}

}  // namespace layerbft
