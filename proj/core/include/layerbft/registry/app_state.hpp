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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "layerbft/core/types.hpp"

namespace layerbft {

enum class PackageStatus : std::uint8_t
{
  kCreated = 0,
  kInSession,
};

/// Workflow stages in their only legal order.
enum class Stage : std::uint8_t
{
  kStarted = 0,
  kScanned,
  kValidated,
  kQualityChecked,
  kLabeled,
};

enum class SessionStatus : std::uint8_t
{
  kActive = 0,
  kCommitting,
  kCommitted,
  kAborted,
};

std::string_view StageName(Stage s);
Stage            StageFromName(std::string_view s);
std::string_view SessionStatusName(SessionStatus s);
SessionStatus    SessionStatusFromName(std::string_view s);
std::string_view PackageStatusName(PackageStatus s);
PackageStatus    PackageStatusFromName(std::string_view s);

struct Package
{
  std::string              package_id;
  std::string              supplier_id;
  std::vector<std::string> expected_contents;
  Authenticator            origin_signature;
  PackageStatus            status = PackageStatus::kCreated;

  friend bool operator==(Package const &, Package const &) = default;
};

/// Bytes a supplier signs to vouch for a package's origin and contents.
Bytes         PackageSigningBytes(std::string_view package_id,
                                  std::vector<std::string> const &expected_contents);
Authenticator SignPackage(std::string_view supplier_id, std::string_view package_id,
                          std::vector<std::string> const &expected_contents);

/// The replicated part of a session. The buffered operations live with the
/// L2 node that owns the session (see l2::Session).
struct SessionRecord
{
  std::string                          session_id;
  std::string                          package_id;
  Stage                                stage  = Stage::kStarted;
  SessionStatus                        status = SessionStatus::kActive;
  std::string                          originator_node;
  std::optional<L1Ref>                 l1_ref;
  std::map<std::string, std::uint64_t> client_nonces;
  std::uint64_t                        operation_count = 0;
  std::string                          label;

  friend bool operator==(SessionRecord const &, SessionRecord const &) = default;
};

struct AppState
{
  std::map<std::string, Package, std::less<>>       packages;
  std::map<std::string, SessionRecord, std::less<>> sessions;
  std::map<std::string, std::string, std::less<>>   courier_assignments;

  Package const       *FindPackage(std::string_view id) const;
  SessionRecord const *FindSession(std::string_view id) const;

  friend bool operator==(AppState const &, AppState const &) = default;
};

std::string PackageKey(std::string_view package_id);
std::string SessionKey(std::string_view session_id);
std::string CourierKey(std::string_view session_id);

/// Applies one write. Keys are "package/<id>", "session/<id>" or
/// "courier/<id>"; anything else is a CodecError.
void     ApplyWrite(AppState &state, StateWrite const &write);
AppState ApplyDelta(AppState state, std::span<StateWrite const> delta);

/// Session ids are assigned by the originating L2 node as "<node>#<n>".
std::string MakeSessionId(std::string_view node_id, std::uint64_t counter);
std::string SessionOriginator(std::string_view session_id);

Value ToValue(Package const &x);
Value ToValue(SessionRecord const &x);
Value ToValue(AppState const &x);
void  FromValue(Value const &v, Package &out);
void  FromValue(Value const &v, SessionRecord &out);
void  FromValue(Value const &v, AppState &out);

/// Canonical bytes of the whole state; equal bytes mean converged replicas.
inline Bytes StateBytes(AppState const &s)
{
  return Serialize(s);
}

}  // namespace layerbft
