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

#include "layerbft/l1/quorum.hpp"

#include <string>

namespace layerbft {

std::size_t Quorum(std::size_t n)
{
  if (n < kMinL1Nodes)
  {
    throw ConfigError("an L1 cluster needs at least " + std::to_string(kMinL1Nodes) +
                      " nodes, got " + std::to_string(n));
  }
  return (2 * n + 1 + 2) / 3;
}

std::size_t FaultBudget(std::size_t n)
{
  return n == 0 ? 0 : (n - 1) / 3;
}

}  // namespace layerbft
