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

#include "layerbft/l2/messages.hpp"

namespace layerbft::l2 {

Value ToValue(ClientRequestMsg const &m)
{
  return Document{{"request_id", m.request_id}, {"request", layerbft::ToValue(m.request)}};
}

void FromValue(Value const &v, ClientRequestMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"request", "request_id"});
  out.request_id = d.at("request_id").AsUint();
  layerbft::FromValue(d.at("request"), out.request);
}

Value ToValue(ClientSessionMsg const &m)
{
  return Document{
      {"request_id", m.request_id}, {"session_id", m.session_id}, {"client_id", m.client_id}};
}

void FromValue(Value const &v, ClientSessionMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"client_id", "request_id", "session_id"});
  out.request_id = d.at("request_id").AsUint();
  out.session_id = d.at("session_id").AsString();
  out.client_id  = d.at("client_id").AsString();
}

Value ToValue(ClientResponseMsg const &m)
{
  return Document{{"request_id", m.request_id}, {"response", layerbft::ToValue(m.response)}};
}

void FromValue(Value const &v, ClientResponseMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"request_id", "response"});
  out.request_id = d.at("request_id").AsUint();
  layerbft::FromValue(d.at("response"), out.response);
}

Value ToValue(ReplicateTxMsg const &m)
{
  return Document{{"tx", layerbft::ToValue(m.tx)}};
}

void FromValue(Value const &v, ReplicateTxMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"tx"});
  layerbft::FromValue(d.at("tx"), out.tx);
}

Value ToValue(ValidationVoteMsg const &m)
{
  Document d;
  d["tx_hash"]         = layerbft::ToValue(m.tx_hash);
  d["valid"]           = m.valid;
  d["response_digest"] = layerbft::ToValue(m.response_digest);
  d["reason"]          = m.reason;
  return d;
}

void FromValue(Value const &v, ValidationVoteMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"reason", "response_digest", "tx_hash", "valid"});
  layerbft::FromValue(d.at("tx_hash"), out.tx_hash);
  out.valid = d.at("valid").AsBool();
  layerbft::FromValue(d.at("response_digest"), out.response_digest);
  out.reason = d.at("reason").AsString();
}

Value ToValue(ApplyDeltaMsg const &m)
{
  return Document{{"tx", layerbft::ToValue(m.tx)}};
}

void FromValue(Value const &v, ApplyDeltaMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"tx"});
  layerbft::FromValue(d.at("tx"), out.tx);
}

Value ToValue(SessionUpdateMsg const &m)
{
  Document d;
  d["session_id"] = m.session_id;
  d["status"]     = SessionStatusName(m.status);
  d["l1_ref"]     = m.l1_ref ? layerbft::ToValue(*m.l1_ref) : Value{};
  return d;
}

void FromValue(Value const &v, SessionUpdateMsg &out)
{
  auto const &d = v.AsMap();
  ExpectFields(d, {"l1_ref", "session_id", "status"});
  out.session_id = d.at("session_id").AsString();
  out.status     = SessionStatusFromName(d.at("status").AsString());
  out.l1_ref.reset();
  if (!d.at("l1_ref").is_null())
  {
    L1Ref ref;
    layerbft::FromValue(d.at("l1_ref"), ref);
    out.l1_ref = ref;
  }
}

}  // namespace layerbft::l2
