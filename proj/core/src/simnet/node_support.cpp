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

#include "layerbft/simnet/node_support.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace layerbft::simnet {
namespace {

constexpr std::array<std::pair<Behavior, std::string_view>, 4> kNames = {{
    {Behavior::kHonest, "Honest"},
    {Behavior::kWrongResult, "WrongResult"},
    {Behavior::kEquivocate, "Equivocate"},
    {Behavior::kSilent, "Silent"},
}};

}  // namespace

std::string_view BehaviorName(Behavior b)
{
  for (auto const &[k, n] : kNames)
  {
    if (k == b)
    {
      return n;
    }
  }
  return "Unknown";
}

Behavior BehaviorFromName(std::string_view name)
{
  for (auto const &[k, n] : kNames)
  {
    if (n == name)
    {
      return k;
    }
  }
  throw std::invalid_argument("unknown behavior '" + std::string{name} + "'");
}

}  // namespace layerbft::simnet
