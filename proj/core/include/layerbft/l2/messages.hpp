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
#include <optional>
#include <string>
#include <string_view>

#include "layerbft/core/types.hpp"
#include "layerbft/registry/app_state.hpp"

namespace layerbft::l2 {

// Client <-> L2 node.
inline constexpr std::string_view kClientRequest  = "ClientRequest";
inline constexpr std::string_view kClientCommit   = "ClientCommit";
inline constexpr std::string_view kClientAbort    = "ClientAbort";
inline constexpr std::string_view kClientResponse = "ClientResponse";
// L2 <-> L2.
inline constexpr std::string_view kReplicateTx    = "ReplicateTx";
inline constexpr std::string_view kValidationVote = "ValidationVote";
inline constexpr std::string_view kApplyDelta     = "ApplyDelta";
inline constexpr std::string_view kSessionUpdate  = "SessionUpdate";

struct ClientRequestMsg
{
  std::uint64_t  request_id = 0;
  ServiceRequest request;
};

/// Commit and abort share a shape: which session, on whose behalf.
struct ClientSessionMsg
{
  std::uint64_t request_id = 0;
  std::string   session_id;
  std::string   client_id;
};

struct ClientResponseMsg
{
  std::uint64_t   request_id = 0;
  ServiceResponse response;
};

struct ReplicateTxMsg
{
  Transaction tx;
};

struct ValidationVoteMsg
{
  Digest      tx_hash;
  bool        valid = false;
  Digest      response_digest;
  std::string reason;
};

struct ApplyDeltaMsg
{
  Transaction tx;
};

struct SessionUpdateMsg
{
  std::string          session_id;
  SessionStatus        status = SessionStatus::kActive;
  std::optional<L1Ref> l1_ref;
};

Value ToValue(ClientRequestMsg const &m);
Value ToValue(ClientSessionMsg const &m);
Value ToValue(ClientResponseMsg const &m);
Value ToValue(ReplicateTxMsg const &m);
Value ToValue(ValidationVoteMsg const &m);
Value ToValue(ApplyDeltaMsg const &m);
Value ToValue(SessionUpdateMsg const &m);
void  FromValue(Value const &v, ClientRequestMsg &out);
void  FromValue(Value const &v, ClientSessionMsg &out);
void  FromValue(Value const &v, ClientResponseMsg &out);
void  FromValue(Value const &v, ReplicateTxMsg &out);
void  FromValue(Value const &v, ValidationVoteMsg &out);
void  FromValue(Value const &v, ApplyDeltaMsg &out);
void  FromValue(Value const &v, SessionUpdateMsg &out);

}  // namespace layerbft::l2
