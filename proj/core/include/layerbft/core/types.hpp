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
#include <vector>

#include "layerbft/core/digest.hpp"
#include "layerbft/core/value.hpp"

namespace layerbft {

enum class ResponseStatus : std::uint8_t
{
  kOk = 0,
  kRejected,
  kError,
};

/// Machine-readable rejection reasons. Carried in the response body under
/// "error" so they survive canonical encoding and JSON rendering alike.
enum class ErrorCode : std::uint8_t
{
  kNone = 0,
  kBadRequest,
  kNotFound,
  kStageOrder,
  kDuplicate,
  kReplay,
  kInvalidSignature,
  kSessionInactive,
  kNotOriginator,
  kConsensusRejected,
  kCommitFailed,
  kInternal,
};

inline constexpr ErrorCode kAllErrorCodes[] = {
    ErrorCode::kNone,           ErrorCode::kBadRequest,        ErrorCode::kNotFound,
    ErrorCode::kStageOrder,     ErrorCode::kDuplicate,         ErrorCode::kReplay,
    ErrorCode::kInvalidSignature, ErrorCode::kSessionInactive, ErrorCode::kNotOriginator,
    ErrorCode::kConsensusRejected, ErrorCode::kCommitFailed,   ErrorCode::kInternal,
};

std::string_view ResponseStatusName(ResponseStatus s);
ResponseStatus   ResponseStatusFromName(std::string_view name);
std::string_view ErrorCodeName(ErrorCode code);
ErrorCode        ErrorCodeFromName(std::string_view name);

struct ServiceRequest
{
  std::string                route;
  Document                   body;
  std::string                client_id;
  std::optional<std::string> session_id;
  std::uint64_t              nonce = 0;

  friend bool operator==(ServiceRequest const &, ServiceRequest const &) = default;
};

struct StateWrite
{
  std::string key;
  Value       value;

  friend bool operator==(StateWrite const &, StateWrite const &) = default;
};

struct ServiceResponse
{
  ResponseStatus          status = ResponseStatus::kOk;
  Document                body;
  std::vector<StateWrite> state_delta;

  bool ok() const { return status == ResponseStatus::kOk; }
  /// kNone for OK responses; the body's "error" field otherwise.
  ErrorCode error() const;

  static ServiceResponse Ok(Document body, std::vector<StateWrite> delta = {});
  static ServiceResponse Reject(ErrorCode code, std::string message, Document extra = {});
  static ServiceResponse Error(std::string message);

  friend bool operator==(ServiceResponse const &, ServiceResponse const &) = default;
};

/// Tx(r, s, N_id): the request, the originator's response, and the
/// originator's identity, authenticated by the originator's key.
struct Transaction
{
  ServiceRequest  request;
  ServiceResponse response;
  std::string     originator_id;
  Authenticator   authenticator;

  friend bool operator==(Transaction const &, Transaction const &) = default;
};

/// Bytes covered by the authenticator: everything except the tag itself.
Bytes         SigningBytes(Transaction const &tx);
Digest        TxHash(Transaction const &tx);
void          Sign(Transaction &tx);
bool          HasValidAuthenticator(Transaction const &tx);
/// Canonical digest of a response; what peers compare during re-execution.
Digest        ResponseDigest(ServiceResponse const &response);

/// All operations of one session, committed to L1 as a single unit.
/// `preamble` carries session-free operations the session depends on (the
/// package creation) so validators can replay the session from L1 state.
struct BatchTransaction
{
  std::string              session_id;
  std::vector<Transaction> preamble;
  std::vector<Transaction> operations;
  std::string              originator_id;

  friend bool operator==(BatchTransaction const &, BatchTransaction const &) = default;
};

Digest BatchHash(BatchTransaction const &batch);

/// Structural checks only: non-empty, consistent session ids and originator.
bool IsWellFormed(BatchTransaction const &batch, std::string *why = nullptr);

struct L1Ref
{
  std::uint64_t block_height = 0;
  Digest        tx_hash;

  friend bool operator==(L1Ref const &, L1Ref const &) = default;
};

/// One entry of a quorum certificate: an ACCEPT vote reduced to what is
/// needed to re-verify it against the enclosing block.
struct CertEntry
{
  std::string   voter_id;
  std::uint64_t round = 0;
  Authenticator authenticator;

  friend bool operator==(CertEntry const &, CertEntry const &) = default;
};

struct Block
{
  std::uint64_t                 height = 0;
  Digest                        prev_hash;
  std::vector<BatchTransaction> tx_list;
  std::string                   proposer_id;
  Digest                        block_hash;
  std::vector<CertEntry>        quorum_cert;

  friend bool operator==(Block const &, Block const &) = default;
};

Digest ComputeBlockHash(std::uint64_t height, Digest const &prev_hash,
                        std::vector<BatchTransaction> const &tx_list, std::string_view proposer_id);
inline Digest ComputeBlockHash(Block const &b)
{
  return ComputeBlockHash(b.height, b.prev_hash, b.tx_list, b.proposer_id);
}

enum class Verdict : std::uint8_t
{
  kAccept = 0,
  kReject,
};

struct Vote
{
  std::string                voter_id;
  std::uint64_t              height = 0;
  std::uint64_t              round  = 0;
  Digest                     block_hash;
  Verdict                    verdict = Verdict::kAccept;
  /// Indices of batches found intrinsically invalid (authentic but failing
  /// re-execution). Empty on ACCEPT.
  std::vector<std::uint32_t> invalid_batches;
  Authenticator              authenticator;

  friend bool operator==(Vote const &, Vote const &) = default;
};

Bytes VoteSigningBytes(std::string_view voter_id, std::uint64_t height, std::uint64_t round,
                       Digest const &block_hash, Verdict verdict,
                       std::vector<std::uint32_t> const &invalid_batches);
void  Sign(Vote &vote);
bool  HasValidAuthenticator(Vote const &vote);
CertEntry ToCertEntry(Vote const &vote);
bool      VerifyCertEntry(CertEntry const &entry, Block const &block);

Value ToValue(ServiceRequest const &x);
Value ToValue(ServiceResponse const &x);
Value ToValue(StateWrite const &x);
Value ToValue(Transaction const &x);
Value ToValue(BatchTransaction const &x);
Value ToValue(L1Ref const &x);
Value ToValue(CertEntry const &x);
Value ToValue(Block const &x);
Value ToValue(Vote const &x);

void FromValue(Value const &v, ServiceRequest &out);
void FromValue(Value const &v, ServiceResponse &out);
void FromValue(Value const &v, StateWrite &out);
void FromValue(Value const &v, Transaction &out);
void FromValue(Value const &v, BatchTransaction &out);
void FromValue(Value const &v, L1Ref &out);
void FromValue(Value const &v, CertEntry &out);
void FromValue(Value const &v, Block &out);
void FromValue(Value const &v, Vote &out);

template <typename T>
Value ListToValue(std::vector<T> const &items)
{
  List l;
  l.reserve(items.size());
  for (auto const &item : items)
  {
    l.push_back(ToValue(item));
  }
  return Value{std::move(l)};
}

template <typename T>
std::vector<T> ListFromValue(Value const &v)
{
  std::vector<T> out;
  auto const    &l = v.AsList();
  out.reserve(l.size());
  for (auto const &item : l)
  {
    T x{};
    FromValue(item, x);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace layerbft
