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

#include "layerbft/registry/app_state.hpp"

#include <array>

namespace layerbft {
namespace {

template <typename E, std::size_t N>
E FromName(std::string_view s, std::array<E, N> const &all, std::string_view (*name)(E),
           char const *what)
{
  for (auto e : all)
  {
    if (name(e) == s)
    {
      return e;
    }
  }
  throw CodecError(std::string{"unknown "} + what + " '" + std::string{s} + "'");
}

constexpr std::array kStages = {Stage::kStarted, Stage::kScanned, Stage::kValidated,
                                Stage::kQualityChecked, Stage::kLabeled};
constexpr std::array kSessionStatuses = {SessionStatus::kActive, SessionStatus::kCommitting,
                                         SessionStatus::kCommitted, SessionStatus::kAborted};
constexpr std::array kPackageStatuses = {PackageStatus::kCreated, PackageStatus::kInSession};

std::string_view const kPackagePrefix = "package/";
std::string_view const kSessionPrefix  = "session/";
std::string_view const kCourierPrefix  = "courier/";

}  // namespace

std::string_view StageName(Stage s)
{
  switch (s)
  {
  case Stage::kStarted:
    return "Started";
  case Stage::kScanned:
    return "Scanned";
  case Stage::kValidated:
    return "Validated";
  case Stage::kQualityChecked:
    return "QualityChecked";
  case Stage::kLabeled:
    return "Labeled";
  }
  return "?";
}

Stage StageFromName(std::string_view s)
{
  return FromName(s, kStages, &StageName, "stage");
}

std::string_view SessionStatusName(SessionStatus s)
{
  switch (s)
  {
  case SessionStatus::kActive:
    return "Active";
  case SessionStatus::kCommitting:
    return "Committing";
  case SessionStatus::kCommitted:
    return "Committed";
  case SessionStatus::kAborted:
    return "Aborted";
  }
  return "?";
}

SessionStatus SessionStatusFromName(std::string_view s)
{
  return FromName(s, kSessionStatuses, &SessionStatusName, "session status");
}

std::string_view PackageStatusName(PackageStatus s)
{
  return s == PackageStatus::kCreated ? "Created" : "InSession";
}

PackageStatus PackageStatusFromName(std::string_view s)
{
  return FromName(s, kPackageStatuses, &PackageStatusName, "package status");
}

Bytes PackageSigningBytes(std::string_view package_id,
                          std::vector<std::string> const &expected_contents)
{
  List contents(expected_contents.begin(), expected_contents.end());
  Document d;
  d["package_id"]        = package_id;
  d["expected_contents"] = std::move(contents);
  return Encode(Value{std::move(d)});
}

Authenticator SignPackage(std::string_view supplier_id, std::string_view package_id,
                          std::vector<std::string> const &expected_contents)
{
  return HmacSha256(SupplierKey(supplier_id).bytes,
                    PackageSigningBytes(package_id, expected_contents));
}

Package const *AppState::FindPackage(std::string_view id) const
{
  auto it = packages.find(id);
  return it == packages.end() ? nullptr : &it->second;
}

SessionRecord const *AppState::FindSession(std::string_view id) const
{
  auto it = sessions.find(id);
  return it == sessions.end() ? nullptr : &it->second;
}

std::string PackageKey(std::string_view package_id)
{
  return std::string{kPackagePrefix} + std::string{package_id};
}

std::string SessionKey(std::string_view session_id)
{
  return std::string{kSessionPrefix} + std::string{session_id};
}

std::string CourierKey(std::string_view session_id)
{
  return std::string{kCourierPrefix} + std::string{session_id};
}

void ApplyWrite(AppState &state, StateWrite const &write)
{
  std::string_view key = write.key;
  if (key.starts_with(kPackagePrefix))
  {
    Package p;
    FromValue(write.value, p);
    if (p.package_id != key.substr(kPackagePrefix.size()))
    {
      throw CodecError("package write key does not match package id");
    }
    state.packages.insert_or_assign(p.package_id, std::move(p));
  }
  else if (key.starts_with(kSessionPrefix))
  {
    SessionRecord s;
    FromValue(write.value, s);
    if (s.session_id != key.substr(kSessionPrefix.size()))
    {
      throw CodecError("session write key does not match session id");
    }
    state.sessions.insert_or_assign(s.session_id, std::move(s));
  }
  else if (key.starts_with(kCourierPrefix))
  {
    state.courier_assignments.insert_or_assign(std::string{key.substr(kCourierPrefix.size())},
                                               write.value.AsString());
  }
  else
  {
    throw CodecError("unknown state key '" + write.key + "'");
  }
}

AppState ApplyDelta(AppState state, std::span<StateWrite const> delta)
{
  for (auto const &w : delta)
  {
    ApplyWrite(state, w);
  }
  return state;
}

std::string MakeSessionId(std::string_view node_id, std::uint64_t counter)
{
  return std::string{node_id} + "#" + std::to_string(counter);
}

std::string SessionOriginator(std::string_view session_id)
{
  auto pos = session_id.rfind('#');
  return pos == std::string_view::npos ? std::string{} : std::string{session_id.substr(0, pos)};
}

Value ToValue(Package const &x)
{
  Document d;
  d["package_id"]        = x.package_id;
  d["supplier_id"]       = x.supplier_id;
  d["expected_contents"] = List(x.expected_contents.begin(), x.expected_contents.end());
  d["origin_signature"]  = ToValue(x.origin_signature);
  d["status"]            = PackageStatusName(x.status);
  return d;
}

void FromValue(Value const &v, Package &out)
{
  ExpectFields(v.AsMap(),
               {"package_id", "supplier_id", "expected_contents", "origin_signature", "status"});
  out.package_id  = v.at("package_id").AsString();
  out.supplier_id = v.at("supplier_id").AsString();
  out.expected_contents.clear();
  for (auto const &item : v.at("expected_contents").AsList())
  {
    out.expected_contents.push_back(item.AsString());
  }
  FromValue(v.at("origin_signature"), out.origin_signature);
  out.status = PackageStatusFromName(v.at("status").AsString());
}

Value ToValue(SessionRecord const &x)
{
  Document nonces;
  for (auto const &[client, n] : x.client_nonces)
  {
    nonces[client] = n;
  }
  Document d;
  d["session_id"]      = x.session_id;
  d["package_id"]      = x.package_id;
  d["stage"]           = StageName(x.stage);
  d["status"]          = SessionStatusName(x.status);
  d["originator_node"] = x.originator_node;
  d["l1_ref"]          = x.l1_ref ? ToValue(*x.l1_ref) : Value{};
  d["client_nonces"]   = std::move(nonces);
  d["operation_count"] = x.operation_count;
  d["label"]           = x.label;
  return d;
}

void FromValue(Value const &v, SessionRecord &out)
{
  ExpectFields(v.AsMap(), {"session_id", "package_id", "stage", "status", "originator_node",
                           "l1_ref", "client_nonces", "operation_count", "label"});
  out.session_id      = v.at("session_id").AsString();
  out.package_id      = v.at("package_id").AsString();
  out.stage           = StageFromName(v.at("stage").AsString());
  out.status          = SessionStatusFromName(v.at("status").AsString());
  out.originator_node = v.at("originator_node").AsString();
  auto const &ref     = v.at("l1_ref");
  if (ref.is_null())
  {
    out.l1_ref.reset();
  }
  else
  {
    L1Ref r;
    FromValue(ref, r);
    out.l1_ref = r;
  }
  out.client_nonces.clear();
  for (auto const &[client, n] : v.at("client_nonces").AsMap())
  {
    out.client_nonces[client] = n.AsUint();
  }
  out.operation_count = v.at("operation_count").AsUint();
  out.label           = v.at("label").AsString();
}

Value ToValue(AppState const &x)
{
  Document packages;
  for (auto const &[id, p] : x.packages)
  {
    packages[id] = ToValue(p);
  }
  Document sessions;
  for (auto const &[id, s] : x.sessions)
  {
    sessions[id] = ToValue(s);
  }
  Document couriers;
  for (auto const &[id, c] : x.courier_assignments)
  {
    couriers[id] = c;
  }
  Document d;
  d["packages"]            = std::move(packages);
  d["sessions"]            = std::move(sessions);
  d["courier_assignments"] = std::move(couriers);
  return d;
}

void FromValue(Value const &v, AppState &out)
{
  ExpectFields(v.AsMap(), {"packages", "sessions", "courier_assignments"});
  out = AppState{};
  for (auto const &[id, p] : v.at("packages").AsMap())
  {
    FromValue(p, out.packages[id]);
  }
  for (auto const &[id, s] : v.at("sessions").AsMap())
  {
    FromValue(s, out.sessions[id]);
  }
  for (auto const &[id, c] : v.at("courier_assignments").AsMap())
  {
    out.courier_assignments[id] = c.AsString();
  }
}

}  // namespace layerbft
