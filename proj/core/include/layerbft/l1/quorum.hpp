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

#include <cstddef>
#include <stdexcept>

namespace layerbft {

class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMinL1Nodes = 4;

/// Matching votes needed to commit: ceil((2n + 1) / 3). Throws ConfigError
/// for n < 4.
std::size_t Quorum(std::size_t n);

/// Byzantine nodes tolerated by an n-node cluster: floor((n - 1) / 3).
std::size_t FaultBudget(std::size_t n);

}  // namespace layerbft
