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

#include "layerbft/gateway/http_mapping.hpp"

#include <array>
#include <chrono>

#include "layerbft/core/json.hpp"
#include "layerbft/registry/app_state.hpp"
#include "layerbft/registry/workflow.hpp"

namespace layerbft::gateway {
namespace {

struct StageRoute
{
  std::string_view suffix;
  std::string_view route;
  std::string_view endpoint;
};

constexpr std::array<StageRoute, 4> kStageRoutes = {{
    {"scan", kRouteScan, "scan_package"},
    {"validate", kRouteValidate, "validate_package"},
    {"quality-check", kRouteQualityCheck, "quality_check"},
    {"label", kRouteLabel, "label_package"},
}};

Document ParseBody(std::string_view body)
{
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos)
  {
    return {};
  }
  nlohmann::json j;
  try
  {
    j = nlohmann::json::parse(body);
  }
  catch (nlohmann::json::parse_error const &e)
  {
    throw MappingError(400, ErrorCode::kBadRequest, std::string{"malformed JSON: "} + e.what());
  }
  if (!j.is_object())
  {
    throw MappingError(400, ErrorCode::kBadRequest, "request body must be a JSON object");
  }
  try
  {
    return FromJson(j).AsMap();
  }
  catch (std::exception const &e)
  {
    throw MappingError(400, ErrorCode::kBadRequest, e.what());
  }
}

void SignIfMissing(Document &body)
{
  if (body.contains("signature"))
  {
    return;
  }
  auto pkg      = body.find("package_id");
  auto supplier = body.find("supplier_id");
  auto contents = body.find("expected_contents");
  if (pkg == body.end() || supplier == body.end() || contents == body.end() ||
      pkg->second.kind() != Value::Kind::kString ||
      supplier->second.kind() != Value::Kind::kString ||
      contents->second.kind() != Value::Kind::kList)
  {
    return;  // let the handler report what is missing
  }
  std::vector<std::string> items;
  for (auto const &v : contents->second.AsList())
  {
    if (v.kind() != Value::Kind::kString)
    {
      return;
    }
    items.push_back(v.AsString());
  }
  body["signature"] =
      SignPackage(supplier->second.AsString(), pkg->second.AsString(), items).Hex();
}

}  // namespace

HttpCall MapHttp(std::string_view path, std::string_view body, std::string client_id,
                 std::uint64_t nonce, MapOptions const &options)
{
  HttpCall call;
  call.request.client_id = std::move(client_id);
  call.request.nonce     = nonce;

  if (path == kRouteCreatePackage || path == kRouteStartSession)
  {
    call.request.route = std::string{path};
    call.request.body  = ParseBody(body);
    call.creates       = true;
    if (path == kRouteCreatePackage)
    {
      call.endpoint = "create_package";
      if (options.sign_missing_origin)
      {
        SignIfMissing(call.request.body);
      }
    }
    else
    {
      call.endpoint = "start_session";
    }
    return call;
  }

  constexpr std::string_view kPrefix = "/sessions/";
  if (path.substr(0, kPrefix.size()) == kPrefix)
  {
    auto rest  = path.substr(kPrefix.size());
    auto slash = rest.find('/');
    if (slash != std::string_view::npos && slash > 0)
    {
      auto sid    = rest.substr(0, slash);
      auto action = rest.substr(slash + 1);
      call.session_id = std::string{sid};
      if (action == "commit" || action == "abort")
      {
        ParseBody(body);  // still reject garbage
        call.kind     = action == "commit" ? CallKind::kCommit : CallKind::kAbort;
        call.endpoint = std::string{action};
        return call;
      }
      for (auto const &s : kStageRoutes)
      {
        if (action == s.suffix)
        {
          call.request.route      = std::string{s.route};
          call.request.session_id = call.session_id;
          call.request.body       = ParseBody(body);
          call.endpoint           = std::string{s.endpoint};
          return call;
        }
      }
    }
  }
  throw MappingError(404, ErrorCode::kNotFound, "no route for POST " + std::string{path});
}

int HttpStatusFor(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::kNone: return 200;
  case ErrorCode::kBadRequest: return 400;
  case ErrorCode::kNotFound: return 404;
  case ErrorCode::kStageOrder:
  case ErrorCode::kDuplicate:
  case ErrorCode::kReplay:
  case ErrorCode::kInvalidSignature:
  case ErrorCode::kSessionInactive:
  case ErrorCode::kNotOriginator: return 409;
  case ErrorCode::kConsensusRejected:
  case ErrorCode::kCommitFailed: return 422;
  case ErrorCode::kInternal: return 500;
  }
  return 500;
}

int HttpStatusFor(ServiceResponse const &response, bool creates)
{
  if (response.ok())
  {
    return creates ? 201 : 200;
  }
  auto code = response.error();
  // A non-OK response without a reason is a server fault, never a 200.
  return code == ErrorCode::kNone ? 500 : HttpStatusFor(code);
}

nlohmann::json Envelope(std::string const &request_id, std::string_view status,
                        nlohmann::json body, std::int64_t t_server_in, std::int64_t t_server_out)
{
  return {{"request_id", request_id},
          {"status", std::string{status}},
          {"body", std::move(body)},
          {"t_server_in", t_server_in},
          {"t_server_out", t_server_out}};
}

std::int64_t WallMicros()
{
  using namespace std::chrono;
  return duration_cast<microseconds>(system_clock::now().time_since_epoch()).count();
}

}  // namespace layerbft::gateway
