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

#include "layerbft/core/json.hpp"

#include "layerbft/core/digest.hpp"

namespace layerbft {

nlohmann::json ToJson(Value const &v)
{
  switch (v.kind())
  {
  case Value::Kind::kNull:
    return nullptr;
  case Value::Kind::kBool:
    return v.AsBool();
  case Value::Kind::kInt:
    return v.AsInt();
  case Value::Kind::kString:
    return v.AsString();
  case Value::Kind::kBytes:
    return ToHex(v.AsBytes());
  case Value::Kind::kList:
  {
    auto out = nlohmann::json::array();
    for (auto const &item : v.AsList())
    {
      out.push_back(ToJson(item));
    }
    return out;
  }
  case Value::Kind::kMap:
  {
    auto out = nlohmann::json::object();
    for (auto const &[k, item] : v.AsMap())
    {
      out[k] = ToJson(item);
    }
    return out;
  }
  }
  return nullptr;
}

Value FromJson(nlohmann::json const &j)
{
  switch (j.type())
  {
  case nlohmann::json::value_t::null:
    return Value{};
  case nlohmann::json::value_t::boolean:
    return Value{j.get<bool>()};
  case nlohmann::json::value_t::number_integer:
    return Value{j.get<std::int64_t>()};
  case nlohmann::json::value_t::number_unsigned:
    return Value{j.get<std::uint64_t>()};
  case nlohmann::json::value_t::string:
    return Value{j.get<std::string>()};
  case nlohmann::json::value_t::array:
  {
    List l;
    for (auto const &item : j)
    {
      l.push_back(FromJson(item));
    }
    return Value{std::move(l)};
  }
  case nlohmann::json::value_t::object:
  {
    Document d;
    for (auto const &[k, item] : j.items())
    {
      d.emplace(k, FromJson(item));
    }
    return Value{std::move(d)};
  }
  default:
    throw CodecError(std::string{"unsupported JSON value of type "} + j.type_name());
  }
}

}  // namespace layerbft
