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

#include <nlohmann/json.hpp>

#include "layerbft/core/value.hpp"

namespace layerbft {

/// Human-facing rendering for the HTTP edge and reports. Bytes render as
/// lowercase hex strings. Never used as hashing or equality input.
nlohmann::json ToJson(Value const &v);

/// Parses a JSON document into a Value. Integers only: floating point
/// numbers are rejected so that request bodies stay canonically encodable.
Value FromJson(nlohmann::json const &j);

template <typename T>
nlohmann::json RenderJson(T const &x)
{
  return ToJson(ToValue(x));
}

}  // namespace layerbft
