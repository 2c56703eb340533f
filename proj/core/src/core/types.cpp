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

#include "layerbft/core/types.hpp"

#include <set>

namespace layerbft {
namespace {

Value OptionalString(std::optional<std::string> const &s)
{
  return s ? Value{*s} : Value{};
}

Bytes EncodeWithout(Value v, std::string_view field)
{
  v.MutableMap().erase(std::string{field});
  return Encode(v);
}

Value IndexList(std::vector<std::uint32_t> const &xs)
{
  List l;
  for (auto x : xs)
  {
    l.emplace_back(static_cast<std::int64_t>(x));
  }
  return Value{std::move(l)};
}

std::vector<std::uint32_t> IndexListFrom(Value const &v)
{
  std::vector<std::uint32_t> out;
  for (auto const &x : v.AsList())
  {
    auto i = x.AsUint();
    if (i > UINT32_MAX)
    {
      throw CodecError("batch index out of range");
    }
    out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::string_view VerdictName(Verdict v)
{
  return v == Verdict::kAccept ? "ACCEPT" : "REJECT";
}

Verdict VerdictFromName(std::string_view s)
{
  if (s == "ACCEPT")
  {
    return Verdict::kAccept;
  }
  if (s == "REJECT")
  {
    return Verdict::kReject;
  }
  throw CodecError("unknown verdict '" + std::string{s} + "'");
}

}  // namespace

std::string_view ResponseStatusName(ResponseStatus s)
{
  switch (s)
  {
  case ResponseStatus::kOk:
    return "OK";
  case ResponseStatus::kRejected:
    return "REJECTED";
  case ResponseStatus::kError:
    return "ERROR";
  }
  return "?";
}

ResponseStatus ResponseStatusFromName(std::string_view name)
{
  for (auto s : {ResponseStatus::kOk, ResponseStatus::kRejected, ResponseStatus::kError})
  {
    if (ResponseStatusName(s) == name)
    {
      return s;
    }
  }
  throw CodecError("unknown response status '" + std::string{name} + "'");
}

std::string_view ErrorCodeName(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::kNone:
    return "none";
  case ErrorCode::kBadRequest:
    return "bad_request";
  case ErrorCode::kNotFound:
    return "not_found";
  case ErrorCode::kStageOrder:
    return "stage_order";
  case ErrorCode::kDuplicate:
    return "duplicate";
  case ErrorCode::kReplay:
    return "replay";
  case ErrorCode::kInvalidSignature:
    return "invalid_signature";
  case ErrorCode::kSessionInactive:
    return "session_inactive";
  case ErrorCode::kNotOriginator:
    return "not_originator";
  case ErrorCode::kConsensusRejected:
    return "consensus_rejected";
  case ErrorCode::kCommitFailed:
    return "commit_failed";
  case ErrorCode::kInternal:
    return "internal";
  }
  return "?";
}

ErrorCode ErrorCodeFromName(std::string_view name)
{
  for (auto c : kAllErrorCodes)
  {
    if (ErrorCodeName(c) == name)
    {
      return c;
    }
  }
  return ErrorCode::kInternal;
}

ErrorCode ServiceResponse::error() const
{
  if (ok())
  {
    return ErrorCode::kNone;
  }
  auto it = body.find("error");
  if (it == body.end() || it->second.kind() != Value::Kind::kString)
  {
    return ErrorCode::kInternal;
  }
  return ErrorCodeFromName(it->second.AsString());
}

ServiceResponse ServiceResponse::Ok(Document body, std::vector<StateWrite> delta)
{
  return ServiceResponse{ResponseStatus::kOk, std::move(body), std::move(delta)};
}

ServiceResponse ServiceResponse::Reject(ErrorCode code, std::string message, Document extra)
{
  extra["error"]   = std::string{ErrorCodeName(code)};
  extra["message"] = std::move(message);
  return ServiceResponse{ResponseStatus::kRejected, std::move(extra), {}};
}

ServiceResponse ServiceResponse::Error(std::string message)
{
  Document body;
  body["error"]   = std::string{ErrorCodeName(ErrorCode::kInternal)};
  body["message"] = std::move(message);
  return ServiceResponse{ResponseStatus::kError, std::move(body), {}};
}

Bytes SigningBytes(Transaction const &tx)
{
  return EncodeWithout(ToValue(tx), "authenticator");
}

Digest TxHash(Transaction const &tx)
{
  return Sha256(Serialize(tx));
}

void Sign(Transaction &tx)
{
  tx.authenticator = Authenticate(tx.originator_id, SigningBytes(tx));
}

bool HasValidAuthenticator(Transaction const &tx)
{
  return !tx.originator_id.empty() &&
         VerifyAuthenticator(tx.originator_id, SigningBytes(tx), tx.authenticator);
}

Digest ResponseDigest(ServiceResponse const &response)
{
  return Sha256(Serialize(response));
}

Digest BatchHash(BatchTransaction const &batch)
{
  return Sha256(Serialize(batch));
}

bool IsWellFormed(BatchTransaction const &batch, std::string *why)
{
  auto fail = [why](std::string msg) {
    if (why != nullptr)
    {
      *why = std::move(msg);
    }
    return false;
  };
  if (batch.session_id.empty())
  {
    return fail("empty session id");
  }
  if (batch.originator_id.empty())
  {
    return fail("empty originator id");
  }
  if (batch.operations.empty())
  {
    return fail("batch has no operations");
  }
  for (auto const &op : batch.operations)
  {
    if (op.request.session_id != batch.session_id)
    {
      return fail("operation session id differs from batch session id");
    }
    if (op.originator_id != batch.originator_id)
    {
      return fail("operation originator differs from batch originator");
    }
  }
  for (auto const &op : batch.preamble)
  {
    if (op.request.session_id.has_value())
    {
      return fail("preamble operation is session-scoped");
    }
  }
  return true;
}

Digest ComputeBlockHash(std::uint64_t height, Digest const &prev_hash,
                        std::vector<BatchTransaction> const &tx_list, std::string_view proposer_id)
{
  Document d;
  d["height"]      = height;
  d["prev_hash"]   = ToValue(prev_hash);
  d["proposer_id"] = proposer_id;
  d["tx_list"]     = ListToValue(tx_list);
  return Sha256(Encode(Value{std::move(d)}));
}

Bytes VoteSigningBytes(std::string_view voter_id, std::uint64_t height, std::uint64_t round,
                       Digest const &block_hash, Verdict verdict,
                       std::vector<std::uint32_t> const &invalid_batches)
{
  Document d;
  d["voter_id"]        = voter_id;
  d["height"]          = height;
  d["round"]           = round;
  d["block_hash"]      = ToValue(block_hash);
  d["verdict"]         = VerdictName(verdict);
  d["invalid_batches"] = IndexList(invalid_batches);
  return Encode(Value{std::move(d)});
}

void Sign(Vote &vote)
{
  vote.authenticator =
      Authenticate(vote.voter_id, VoteSigningBytes(vote.voter_id, vote.height, vote.round,
                                                   vote.block_hash, vote.verdict,
                                                   vote.invalid_batches));
}

bool HasValidAuthenticator(Vote const &vote)
{
  return VerifyAuthenticator(vote.voter_id,
                             VoteSigningBytes(vote.voter_id, vote.height, vote.round,
                                              vote.block_hash, vote.verdict,
                                              vote.invalid_batches),
                             vote.authenticator);
}

CertEntry ToCertEntry(Vote const &vote)
{
  return CertEntry{vote.voter_id, vote.round, vote.authenticator};
}

bool VerifyCertEntry(CertEntry const &entry, Block const &block)
{
  return VerifyAuthenticator(entry.voter_id,
                             VoteSigningBytes(entry.voter_id, block.height, entry.round,
                                              block.block_hash, Verdict::kAccept, {}),
                             entry.authenticator);
}

Value ToValue(ServiceRequest const &x)
{
  Document d;
  d["route"]      = x.route;
  d["body"]       = x.body;
  d["client_id"]  = x.client_id;
  d["session_id"] = OptionalString(x.session_id);
  d["nonce"]      = x.nonce;
  return d;
}

void FromValue(Value const &v, ServiceRequest &out)
{
  auto const &m = v.AsMap();
  ExpectFields(m, {"route", "body", "client_id", "session_id", "nonce"});
  out.route     = v.at("route").AsString();
  out.body      = v.at("body").AsMap();
  out.client_id = v.at("client_id").AsString();
  auto const &s = v.at("session_id");
  out.session_id =
      s.is_null() ? std::nullopt : std::optional<std::string>{s.AsString()};
  out.nonce = v.at("nonce").AsUint();
}

Value ToValue(StateWrite const &x)
{
  Document d;
  d["key"]   = x.key;
  d["value"] = x.value;
  return d;
}

void FromValue(Value const &v, StateWrite &out)
{
  ExpectFields(v.AsMap(), {"key", "value"});
  out.key   = v.at("key").AsString();
  out.value = v.at("value");
}

Value ToValue(ServiceResponse const &x)
{
  Document d;
  d["status"]      = ResponseStatusName(x.status);
  d["body"]        = x.body;
  d["state_delta"] = ListToValue(x.state_delta);
  return d;
}

void FromValue(Value const &v, ServiceResponse &out)
{
  ExpectFields(v.AsMap(), {"status", "body", "state_delta"});
  out.status      = ResponseStatusFromName(v.at("status").AsString());
  out.body        = v.at("body").AsMap();
  out.state_delta = ListFromValue<StateWrite>(v.at("state_delta"));
  if (!out.ok() && !out.state_delta.empty())
  {
    throw CodecError("non-OK response carries a state delta");
  }
}

Value ToValue(Transaction const &x)
{
  Document d;
  d["request"]       = ToValue(x.request);
  d["response"]      = ToValue(x.response);
  d["originator_id"] = x.originator_id;
  d["authenticator"] = ToValue(x.authenticator);
  return d;
}

void FromValue(Value const &v, Transaction &out)
{
  ExpectFields(v.AsMap(), {"request", "response", "originator_id", "authenticator"});
  FromValue(v.at("request"), out.request);
  FromValue(v.at("response"), out.response);
  out.originator_id = v.at("originator_id").AsString();
  FromValue(v.at("authenticator"), out.authenticator);
}

Value ToValue(BatchTransaction const &x)
{
  Document d;
  d["session_id"]    = x.session_id;
  d["preamble"]      = ListToValue(x.preamble);
  d["operations"]    = ListToValue(x.operations);
  d["originator_id"] = x.originator_id;
  return d;
}

void FromValue(Value const &v, BatchTransaction &out)
{
  ExpectFields(v.AsMap(), {"session_id", "preamble", "operations", "originator_id"});
  out.session_id    = v.at("session_id").AsString();
  out.preamble      = ListFromValue<Transaction>(v.at("preamble"));
  out.operations    = ListFromValue<Transaction>(v.at("operations"));
  out.originator_id = v.at("originator_id").AsString();
}

Value ToValue(L1Ref const &x)
{
  Document d;
  d["block_height"] = x.block_height;
  d["tx_hash"]      = ToValue(x.tx_hash);
  return d;
}

void FromValue(Value const &v, L1Ref &out)
{
  ExpectFields(v.AsMap(), {"block_height", "tx_hash"});
  out.block_height = v.at("block_height").AsUint();
  FromValue(v.at("tx_hash"), out.tx_hash);
}

Value ToValue(CertEntry const &x)
{
  Document d;
  d["voter_id"]      = x.voter_id;
  d["round"]         = x.round;
  d["authenticator"] = ToValue(x.authenticator);
  return d;
}

void FromValue(Value const &v, CertEntry &out)
{
  ExpectFields(v.AsMap(), {"voter_id", "round", "authenticator"});
  out.voter_id = v.at("voter_id").AsString();
  out.round    = v.at("round").AsUint();
  FromValue(v.at("authenticator"), out.authenticator);
}

Value ToValue(Block const &x)
{
  Document d;
  d["height"]      = x.height;
  d["prev_hash"]   = ToValue(x.prev_hash);
  d["tx_list"]     = ListToValue(x.tx_list);
  d["proposer_id"] = x.proposer_id;
  d["block_hash"]  = ToValue(x.block_hash);
  d["quorum_cert"] = ListToValue(x.quorum_cert);
  return d;
}

void FromValue(Value const &v, Block &out)
{
  ExpectFields(v.AsMap(),
               {"height", "prev_hash", "tx_list", "proposer_id", "block_hash", "quorum_cert"});
  out.height = v.at("height").AsUint();
  FromValue(v.at("prev_hash"), out.prev_hash);
  out.tx_list     = ListFromValue<BatchTransaction>(v.at("tx_list"));
  out.proposer_id = v.at("proposer_id").AsString();
  FromValue(v.at("block_hash"), out.block_hash);
  out.quorum_cert = ListFromValue<CertEntry>(v.at("quorum_cert"));
}

Value ToValue(Vote const &x)
{
  Document d;
  d["voter_id"]        = x.voter_id;
  d["height"]          = x.height;
  d["round"]           = x.round;
  d["block_hash"]      = ToValue(x.block_hash);
  d["verdict"]         = VerdictName(x.verdict);
  d["invalid_batches"] = IndexList(x.invalid_batches);
  d["authenticator"]   = ToValue(x.authenticator);
  return d;
}

void FromValue(Value const &v, Vote &out)
{
  ExpectFields(v.AsMap(), {"voter_id", "height", "round", "block_hash", "verdict",
                           "invalid_batches", "authenticator"});
  out.voter_id = v.at("voter_id").AsString();
  out.height   = v.at("height").AsUint();
  out.round    = v.at("round").AsUint();
  FromValue(v.at("block_hash"), out.block_hash);
  out.verdict         = VerdictFromName(v.at("verdict").AsString());
  out.invalid_batches = IndexListFrom(v.at("invalid_batches"));
  FromValue(v.at("authenticator"), out.authenticator);
}

}  // namespace layerbft
