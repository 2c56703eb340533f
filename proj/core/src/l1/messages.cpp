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

#include "layerbft/l1/messages.hpp"

namespace layerbft::l1 {

Value ToValue(SubmitBatchMsg const &m)
{
  return Document{{"batch", layerbft::ToValue(m.batch)}};
}

void FromValue(Value const &v, SubmitBatchMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"batch"});
  layerbft::FromValue(d.at("batch"), out.batch);
}

Value ToValue(ProposalMsg const &m)
{
  return Document{{"round", m.round}, {"block", layerbft::ToValue(m.block)}};
}

void FromValue(Value const &v, ProposalMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"block", "round"});
  out.round = d.at("round").AsUint();
  layerbft::FromValue(d.at("block"), out.block);
}

Value ToValue(CommitNoticeMsg const &m)
{
  return Document{{"block", layerbft::ToValue(m.block)}};
}

void FromValue(Value const &v, CommitNoticeMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"block"});
  layerbft::FromValue(d.at("block"), out.block);
}

Value ToValue(RoundTimeoutMsg const &m)
{
  return Document{{"height", m.height}, {"round", m.round}};
}

void FromValue(Value const &v, RoundTimeoutMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"height", "round"});
  out.height = d.at("height").AsUint();
  out.round  = d.at("round").AsUint();
}

Value ToValue(CommitResultMsg const &m)
{
  Document d;
  d["session_id"] = m.session_id;
  d["batch_hash"] = layerbft::ToValue(m.batch_hash);
  d["committed"]  = m.committed;
  d["l1_ref"]     = m.l1_ref ? layerbft::ToValue(*m.l1_ref) : Value{};
  d["reason"]     = m.reason;
  d["accepts"]    = m.accepts;
  d["rejects"]    = m.rejects;
  return d;
}

void FromValue(Value const &v, CommitResultMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"accepts", "batch_hash", "committed", "l1_ref", "reason", "rejects",
                   "session_id"});
  out.session_id = d.at("session_id").AsString();
  layerbft::FromValue(d.at("batch_hash"), out.batch_hash);
  out.committed = d.at("committed").AsBool();
  out.l1_ref.reset();
  if (!d.at("l1_ref").is_null())
  {
    L1Ref ref;
    layerbft::FromValue(d.at("l1_ref"), ref);
    out.l1_ref = ref;
  }
  out.reason  = d.at("reason").AsString();
  out.accepts = d.at("accepts").AsUint();
  out.rejects = d.at("rejects").AsUint();
}

}  // namespace layerbft::l1
