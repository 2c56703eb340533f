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
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "layerbft/core/types.hpp"

namespace layerbft::gateway {

enum class CallKind
{
  kService,
  kCommit,
  kAbort,
};

/// A POST translated for the L2 node.
struct HttpCall
{
  CallKind       kind = CallKind::kService;
  ServiceRequest request;     ///< Meaningful for kService only.
  std::string    session_id;  ///< Path session id, empty for top-level routes.
  std::string    endpoint;    ///< Latency label, e.g. "scan_package".
  bool           creates = false;
};

/// Request rejected before reaching the node.
class MappingError : public std::runtime_error
{
public:
  MappingError(int http_status, ErrorCode code, std::string const &what)
      : std::runtime_error(what), http_status_(http_status), code_(code)
  {}
  int       http_status() const { return http_status_; }
  ErrorCode code() const { return code_; }

private:
  int       http_status_;
  ErrorCode code_;
};

struct MapOptions
{
  /// Fill a missing "signature" on POST /packages with the supplier's
  /// placeholder-key signature. Demo convenience for browser clients.
  bool sign_missing_origin = false;
};

/// Maps POST `path` with JSON `body` (empty means {}) to a call. Throws
/// MappingError: 404 for unknown routes, 400 for malformed JSON or a
/// non-object body.
HttpCall MapHttp(std::string_view path, std::string_view body, std::string client_id,
                 std::uint64_t nonce, MapOptions const &options = {});

/// Status code for a handler error; total over ErrorCode.
int HttpStatusFor(ErrorCode code);
/// 200, or 201 when `creates`, for OK responses; HttpStatusFor otherwise.
int HttpStatusFor(ServiceResponse const &response, bool creates);

/// {request_id, status, body, t_server_in, t_server_out}; times are wall
/// clock microseconds since the Unix epoch.
nlohmann::json Envelope(std::string const &request_id, std::string_view status,
                        nlohmann::json body, std::int64_t t_server_in, std::int64_t t_server_out);

std::int64_t WallMicros();

}  // namespace layerbft::gateway
