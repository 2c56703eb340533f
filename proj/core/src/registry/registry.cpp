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

#include "layerbft/registry/registry.hpp"

namespace layerbft {

void Registry::Register(std::string route, Handler handler)
{
  if (route.empty())
  {
    throw RegistryError("empty route");
  }
  if (!handler.fn)
  {
    throw RegistryError("route '" + route + "' registered without a handler");
  }
  auto [it, inserted] = routes_.emplace(std::move(route), std::move(handler));
  if (!inserted)
  {
    throw RegistryError("route '" + it->first + "' already registered");
  }
}

Handler const &Registry::Resolve(std::string_view route) const
{
  auto it = routes_.find(route);
  if (it == routes_.end())
  {
    throw RouteNotFound("no handler for route '" + std::string{route} + "'");
  }
  return it->second;
}

bool Registry::Contains(std::string_view route) const
{
  return routes_.find(route) != routes_.end();
}

ServiceResponse Registry::Respond(ServiceRequest const &request, AppState const &state) const
{
  auto it = routes_.find(request.route);
  if (it == routes_.end())
  {
    return ServiceResponse::Reject(ErrorCode::kNotFound, "unknown route " + request.route);
  }
  auto const &handler = it->second;
  if (handler.session_scoped)
  {
    if (!request.session_id)
    {
      return ServiceResponse::Reject(ErrorCode::kBadRequest, "session id required");
    }
    auto const *session = state.FindSession(*request.session_id);
    if (session == nullptr)
    {
      return ServiceResponse::Reject(ErrorCode::kNotFound,
                                     "unknown session " + *request.session_id);
    }
    if (session->status != SessionStatus::kActive)
    {
      return ServiceResponse::Reject(ErrorCode::kSessionInactive,
                                     "session is " +
                                         std::string{SessionStatusName(session->status)});
    }
  }

  ServiceResponse response;
  try
  {
    response = handler.fn(request, state);
  }
  catch (CodecError const &e)
  {
    return ServiceResponse::Reject(ErrorCode::kBadRequest, e.what());
  }
  catch (std::exception const &e)
  {
    return ServiceResponse::Error(e.what());
  }
  if (!response.ok())
  {
    response.state_delta.clear();
  }
  return response;
}

Execution Registry::Execute(ServiceRequest const &request, AppState const &state) const
{
  auto response = Respond(request, state);
  if (!response.ok())
  {
    return Execution{std::move(response), state};
  }
  try
  {
    auto next = ApplyDelta(state, response.state_delta);
    return Execution{std::move(response), std::move(next)};
  }
  catch (CodecError const &e)
  {
    return Execution{ServiceResponse::Error(std::string{"handler produced bad delta: "} + e.what()),
                     state};
  }
}

Value Registry::RouteTable() const
{
  Document d;
  for (auto const &[route, handler] : routes_)
  {
    Document entry;
    entry["handler"]        = handler.name;
    entry["session_scoped"] = handler.session_scoped;
    d[route]                = std::move(entry);
  }
  return d;
}

}  // namespace layerbft
