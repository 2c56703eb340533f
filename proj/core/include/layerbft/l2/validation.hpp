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

#include <span>
#include <string>

#include "layerbft/core/types.hpp"
#include "layerbft/registry/registry.hpp"

namespace layerbft::l2 {

struct TxCheck
{
  bool            valid = false;
  std::string     reason;
  /// Response of local re-execution, when it got that far.
  ServiceResponse local_response;
};

/// Full validation of a replicated transaction against the local replica:
/// well-formed and authentic, canonically decodable, allowed by the
/// session constraints, and reproduced exactly by local re-execution.
TxCheck CheckTransaction(Transaction const &tx, AppState const &state, Registry const &registry);

inline bool ValidateTransaction(Transaction const &tx, AppState const &state,
                                Registry const &registry)
{
  return CheckTransaction(tx, state, registry).valid;
}

/// Same check on wire bytes; undecodable input is invalid.
bool ValidateTransactionBytes(std::span<std::uint8_t const> bytes, AppState const &state,
                              Registry const &registry);

}  // namespace layerbft::l2
