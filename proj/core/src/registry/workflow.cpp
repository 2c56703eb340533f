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

#include "layerbft/registry/workflow.hpp"

#include <functional>

namespace layerbft {
namespace {

std::string const &RequireString(Document const &body, std::string_view field)
{
  auto it = body.find(field);
  if (it == body.end())
  {
    throw CodecError("missing field '" + std::string{field} + "'");
  }
  auto const &s = it->second.AsString();
  if (s.empty())
  {
    throw CodecError("field '" + std::string{field} + "' is empty");
  }
  return s;
}

std::vector<std::string> RequireStringList(Document const &body, std::string_view field)
{
  auto it = body.find(field);
  if (it == body.end())
  {
    throw CodecError("missing field '" + std::string{field} + "'");
  }
  std::vector<std::string> out;
  for (auto const &item : it->second.AsList())
  {
    out.push_back(item.AsString());
  }
  if (out.empty())
  {
    throw CodecError("field '" + std::string{field} + "' is empty");
  }
  return out;
}

List ToList(std::vector<std::string> const &xs)
{
  return List(xs.begin(), xs.end());
}

ServiceResponse CreatePackage(ServiceRequest const &req, AppState const &state)
{
  auto const &id        = RequireString(req.body, "package_id");
  auto        contents  = RequireStringList(req.body, "expected_contents");
  auto const &supplier  = RequireString(req.body, "supplier_id");
  auto        signature = Digest::FromHex(RequireString(req.body, "signature"));
  if (req.session_id)
  {
    return ServiceResponse::Reject(ErrorCode::kBadRequest,
                                   "package creation is not session-scoped");
  }
  if (state.FindPackage(id) != nullptr)
  {
    return ServiceResponse::Reject(ErrorCode::kDuplicate, "package " + id + " already exists");
  }
  Package p{id, supplier, contents, signature, PackageStatus::kCreated};

  Document body;
  body["package_id"] = id;
  body["status"]     = PackageStatusName(p.status);
  return ServiceResponse::Ok(std::move(body), {{PackageKey(id), ToValue(p)}});
}

ServiceResponse StartSession(ServiceRequest const &req, AppState const &state)
{
  if (!req.session_id || req.session_id->empty())
  {
    return ServiceResponse::Reject(ErrorCode::kBadRequest,
                                   "session id must be assigned by the originator");
  }
  auto const &sid        = *req.session_id;
  auto const &package_id = RequireString(req.body, "package_id");
  if (state.FindSession(sid) != nullptr)
  {
    return ServiceResponse::Reject(ErrorCode::kDuplicate, "session " + sid + " already exists");
  }
  auto const *pkg = state.FindPackage(package_id);
  if (pkg == nullptr)
  {
    return ServiceResponse::Reject(ErrorCode::kNotFound, "unknown package " + package_id);
  }
  if (pkg->status != PackageStatus::kCreated)
  {
    return ServiceResponse::Reject(ErrorCode::kDuplicate,
                                   "package " + package_id + " is already in a session");
  }

  Package updated = *pkg;
  updated.status  = PackageStatus::kInSession;

  SessionRecord s;
  s.session_id                   = sid;
  s.package_id                   = package_id;
  s.stage                        = Stage::kStarted;
  s.status                       = SessionStatus::kActive;
  s.originator_node              = SessionOriginator(sid);
  s.client_nonces[req.client_id] = req.nonce;
  s.operation_count              = 1;

  Document body;
  body["session_id"] = sid;
  body["package_id"] = package_id;
  body["stage"]      = StageName(s.stage);
  return ServiceResponse::Ok(std::move(body), {{PackageKey(package_id), ToValue(updated)},
                                               {SessionKey(sid), ToValue(s)}});
}

/// Extra work a stage does once the session checks pass. Fills in the
/// response body and any writes beyond the session record, or rejects.
using StageWork = std::function<std::optional<ServiceResponse>(
    ServiceRequest const &, AppState const &, SessionRecord &, Document &,
    std::vector<StateWrite> &)>;

ServiceResponse AdvanceStage(ServiceRequest const &req, AppState const &state, Stage from,
                             Stage to, StageWork const &work)
{
  // Registry::Respond has already checked the session exists and is Active.
  auto record = *state.FindSession(*req.session_id);

  auto last = record.client_nonces.find(req.client_id);
  if (last != record.client_nonces.end() && req.nonce <= last->second)
  {
    return ServiceResponse::Reject(ErrorCode::kReplay,
                                   "nonce " + std::to_string(req.nonce) +
                                       " not above last seen " + std::to_string(last->second));
  }
  if (record.stage != from)
  {
    Document extra;
    extra["stage"]    = StageName(record.stage);
    extra["expected"] = StageName(from);
    return ServiceResponse::Reject(ErrorCode::kStageOrder,
                                   "cannot move to " + std::string{StageName(to)} + " from " +
                                       std::string{StageName(record.stage)},
                                   std::move(extra));
  }

  Document                body;
  std::vector<StateWrite> writes;
  if (auto rejected = work(req, state, record, body, writes))
  {
    return *rejected;
  }
  record.stage                        = to;
  record.client_nonces[req.client_id] = req.nonce;
  record.operation_count += 1;

  body["session_id"] = record.session_id;
  body["stage"]      = StageName(to);
  writes.insert(writes.begin(), StateWrite{SessionKey(record.session_id), ToValue(record)});
  return ServiceResponse::Ok(std::move(body), std::move(writes));
}

std::optional<ServiceResponse> Scan(ServiceRequest const &, AppState const &state,
                                    SessionRecord &record, Document &body,
                                    std::vector<StateWrite> &)
{
  auto const *pkg           = state.FindPackage(record.package_id);
  body["package_id"]        = record.package_id;
  body["expected_contents"] = ToList(pkg->expected_contents);
  return std::nullopt;
}

std::optional<ServiceResponse> ValidateSignature(WorkflowConfig const &config, AppState const &state,
                                                 SessionRecord &record, Document &body)
{
  auto const *pkg = state.FindPackage(record.package_id);
  if (!config.suppliers.contains(pkg->supplier_id))
  {
    return ServiceResponse::Reject(ErrorCode::kInvalidSignature,
                                   "unknown supplier " + pkg->supplier_id);
  }
  auto expected = SignPackage(pkg->supplier_id, pkg->package_id, pkg->expected_contents);
  if (expected != pkg->origin_signature)
  {
    return ServiceResponse::Reject(ErrorCode::kInvalidSignature,
                                   "origin signature does not verify for package " +
                                       pkg->package_id);
  }
  body["package_id"]      = pkg->package_id;
  body["supplier_id"]     = pkg->supplier_id;
  body["signature_valid"] = true;
  return std::nullopt;
}

std::optional<ServiceResponse> QualityCheck(ServiceRequest const &req, AppState const &,
                                            SessionRecord &, Document &body,
                                            std::vector<StateWrite> &)
{
  body["quality"] = "passed";
  if (auto it = req.body.find("notes"); it != req.body.end())
  {
    body["notes"] = it->second.AsString();
  }
  return std::nullopt;
}

std::optional<ServiceResponse> Label(WorkflowConfig const &config, SessionRecord &record,
                                     Document &body, std::vector<StateWrite> &writes)
{
  auto courier = AssignCourier(record.session_id, config.couriers);
  record.label = "LBL-" + Sha256(record.session_id + "/" + record.package_id).Short(10);
  body["courier"]          = courier;
  body["label"]            = record.label;
  body["ready_for_commit"] = true;
  writes.push_back({CourierKey(record.session_id), Value{courier}});
  return std::nullopt;
}

}  // namespace

std::string AssignCourier(std::string_view session_id, std::vector<std::string> const &couriers)
{
  if (couriers.empty())
  {
    throw std::logic_error("no couriers configured");
  }
  auto          d = Sha256(session_id);
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i)
  {
    x = (x << 8) | d.bytes[i];
  }
  return couriers[x % couriers.size()];
}

Registry MakeSupplyChainRegistry(WorkflowConfig const &config)
{
  Registry r;
  r.Register(std::string{kRouteCreatePackage}, {"create_package@1", &CreatePackage, false});
  r.Register(std::string{kRouteStartSession}, {"start_session@1", &StartSession, false});
  r.Register(std::string{kRouteScan},
             {"scan_package@1",
              [](ServiceRequest const &req, AppState const &s) {
                return AdvanceStage(req, s, Stage::kStarted, Stage::kScanned, &Scan);
              },
              true});
  r.Register(std::string{kRouteValidate},
             {"validate_package@1",
              [config](ServiceRequest const &req, AppState const &s) {
                return AdvanceStage(
                    req, s, Stage::kScanned, Stage::kValidated,
                    [&config](ServiceRequest const &, AppState const &st, SessionRecord &rec,
                              Document &body, std::vector<StateWrite> &) {
                      return ValidateSignature(config, st, rec, body);
                    });
              },
              true});
  r.Register(std::string{kRouteQualityCheck},
             {"quality_check@1",
              [](ServiceRequest const &req, AppState const &s) {
                return AdvanceStage(req, s, Stage::kValidated, Stage::kQualityChecked,
                                    &QualityCheck);
              },
              true});
  r.Register(std::string{kRouteLabel},
             {"label_package@1",
              [config](ServiceRequest const &req, AppState const &s) {
                return AdvanceStage(
                    req, s, Stage::kQualityChecked, Stage::kLabeled,
                    [&config](ServiceRequest const &, AppState const &, SessionRecord &rec,
                              Document &body, std::vector<StateWrite> &writes) {
                      return Label(config, rec, body, writes);
                    });
              },
              true});
  return r;
}

ServiceRequest CreatePackageRequest(std::string client_id, std::uint64_t nonce,
                                    std::string package_id, std::vector<std::string> contents,
                                    std::string supplier_id, std::optional<Authenticator> signature)
{
  auto sig = signature.value_or(SignPackage(supplier_id, package_id, contents));
  ServiceRequest r;
  r.route                     = std::string{kRouteCreatePackage};
  r.client_id                 = std::move(client_id);
  r.nonce                     = nonce;
  r.body["package_id"]        = std::move(package_id);
  r.body["expected_contents"] = ToList(contents);
  r.body["supplier_id"]       = std::move(supplier_id);
  r.body["signature"]         = sig.Hex();
  return r;
}

ServiceRequest StartSessionRequest(std::string client_id, std::uint64_t nonce,
                                   std::string package_id)
{
  ServiceRequest r;
  r.route              = std::string{kRouteStartSession};
  r.client_id          = std::move(client_id);
  r.nonce              = nonce;
  r.body["package_id"] = std::move(package_id);
  return r;
}

ServiceRequest StageRequest(std::string_view route, std::string client_id, std::uint64_t nonce,
                            std::string session_id, Document body)
{
  ServiceRequest r;
  r.route      = std::string{route};
  r.client_id  = std::move(client_id);
  r.nonce      = nonce;
  r.session_id = std::move(session_id);
  r.body       = std::move(body);
  return r;
}

}  // namespace layerbft
