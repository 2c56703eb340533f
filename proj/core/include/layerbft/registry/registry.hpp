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

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "layerbft/core/types.hpp"
#include "layerbft/registry/app_state.hpp"

namespace layerbft {

class RegistryError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

class RouteNotFound : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

/// A deterministic state-transition function. Handlers may read only the
/// request and the state they are given: no clocks, no randomness.
using HandlerFn = std::function<ServiceResponse(ServiceRequest const &, AppState const &)>;

struct Handler
{
  /// Stable identity of the behaviour ("name@version"); part of the route
  /// table so that nodes can prove they run the same handler set.
  std::string name;
  HandlerFn   fn;
  /// True when the handler operates on an existing session (session_id is
  /// required and the session must be Active).
  bool session_scoped = false;
};

struct Execution
{
  ServiceResponse response;
  AppState        state;
};

class Registry
{
public:
  /// Throws RegistryError on a duplicate route.
  void Register(std::string route, Handler handler);

  /// Throws RouteNotFound.
  Handler const &Resolve(std::string_view route) const;
  bool           Contains(std::string_view route) const;

  /// Runs the handler for `request.route` against `state`. The returned
  /// state is exactly `state` with `response.state_delta` applied; rejected
  /// and failed executions return `state` untouched with an empty delta.
  Execution Execute(ServiceRequest const &request, AppState const &state) const;

  /// Same as Execute but returns only the response.
  ServiceResponse Respond(ServiceRequest const &request, AppState const &state) const;

  /// Canonical route table: route -> handler name.
  Value RouteTable() const;

  std::size_t size() const { return routes_.size(); }

private:
  std::map<std::string, Handler, std::less<>> routes_;
};

}  // namespace layerbft
