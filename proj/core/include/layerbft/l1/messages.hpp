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
#include "layerbft/simnet/network.hpp"

namespace layerbft::l1 {

inline constexpr std::string_view kSubmitBatch  = "SubmitBatch";
inline constexpr std::string_view kProposal     = "Proposal";
inline constexpr std::string_view kVote         = "Vote";
inline constexpr std::string_view kCommitNotice = "CommitNotice";
inline constexpr std::string_view kRoundTimeout = "RoundTimeout";
inline constexpr std::string_view kCommitResult = "CommitResult";

struct SubmitBatchMsg
{
  BatchTransaction batch;
};

struct ProposalMsg
{
  std::uint64_t round = 0;
  Block         block;
};

/// A committed block together with its quorum certificate.
struct CommitNoticeMsg
{
  Block block;
};

/// "I gave up on `round - 1` at `height` and moved to `round`."
struct RoundTimeoutMsg
{
  std::uint64_t height = 0;
  std::uint64_t round  = 0;
};

/// Outcome of a submitted batch as seen by one L1 node. The L2 originator
/// acts once f+1 nodes report the same outcome.
struct CommitResultMsg
{
  std::string          session_id;
  Digest               batch_hash;
  bool                 committed = false;
  std::optional<L1Ref> l1_ref;
  std::string          reason;
  std::uint64_t        accepts = 0;
  std::uint64_t        rejects = 0;

  /// Fields on which independent reports must agree.
  bool SameOutcome(CommitResultMsg const &o) const
  {
    return session_id == o.session_id && batch_hash == o.batch_hash && committed == o.committed &&
           l1_ref == o.l1_ref;
  }

  friend bool operator==(CommitResultMsg const &, CommitResultMsg const &) = default;
};

Value ToValue(SubmitBatchMsg const &m);
Value ToValue(ProposalMsg const &m);
Value ToValue(CommitNoticeMsg const &m);
Value ToValue(RoundTimeoutMsg const &m);
Value ToValue(CommitResultMsg const &m);
void  FromValue(Value const &v, SubmitBatchMsg &out);
void  FromValue(Value const &v, ProposalMsg &out);
void  FromValue(Value const &v, CommitNoticeMsg &out);
void  FromValue(Value const &v, RoundTimeoutMsg &out);
void  FromValue(Value const &v, CommitResultMsg &out);

template <typename T>
simnet::Message Pack(std::string_view kind, T const &body)
{
  return simnet::Message{std::string{kind}, Serialize(body)};
}

}  // namespace layerbft::l1
