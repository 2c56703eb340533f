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

#include "layerbft/l2/validation.hpp"

#include "layerbft/registry/workflow.hpp"

namespace layerbft::l2 {
namespace {

TxCheck Invalid(std::string reason, ServiceResponse local = {})
{
  return TxCheck{false, std::move(reason), std::move(local)};
}

}  // namespace

TxCheck CheckTransaction(Transaction const &tx, AppState const &state, Registry const &registry)
{
  if (tx.originator_id.empty() || tx.request.route.empty())
  {
    return Invalid("malformed transaction");
  }
  if (!tx.response.ok())
  {
    return Invalid("only accepted operations are replicated");
  }
  if (!HasValidAuthenticator(tx))
  {
    return Invalid("authenticator does not verify for " + tx.originator_id);
  }
  try
  {
    if (!(Deserialize<Transaction>(Serialize(tx)) == tx))
    {
      return Invalid("transaction is not canonically encodable");
    }
  }
  catch (CodecError const &e)
  {
    return Invalid(std::string{"malformed transaction: "} + e.what());
  }

  if (!registry.Contains(tx.request.route))
  {
    return Invalid("unregistered route " + tx.request.route);
  }
  auto const &handler = registry.Resolve(tx.request.route);
  if (tx.request.route == kRouteStartSession)
  {
    if (!tx.request.session_id || SessionOriginator(*tx.request.session_id) != tx.originator_id)
    {
      return Invalid("session id not owned by " + tx.originator_id);
    }
  }
  else if (handler.session_scoped)
  {
    auto const *s = tx.request.session_id ? state.FindSession(*tx.request.session_id) : nullptr;
    if (s == nullptr)
    {
      return Invalid("unknown session");
    }
    if (s->status != SessionStatus::kActive)
    {
      return Invalid("session is " + std::string{SessionStatusName(s->status)});
    }
    if (s->originator_node != tx.originator_id)
    {
      return Invalid("session belongs to " + s->originator_node);
    }
  }

  auto local = registry.Respond(tx.request, state);
  if (!local.ok())
  {
    auto code = local.error();
    return Invalid("request violates state constraints (" + std::string{ErrorCodeName(code)} + ")",
                   std::move(local));
  }
  if (Serialize(local) != Serialize(tx.response))
  {
    return Invalid("response differs from local re-execution", std::move(local));
  }
  return TxCheck{true, {}, std::move(local)};
}

bool ValidateTransactionBytes(std::span<std::uint8_t const> bytes, AppState const &state,
                              Registry const &registry)
{
  Transaction tx;
  try
  {
    tx = Deserialize<Transaction>(bytes);
  }
  catch (CodecError const &)
  {
    return false;
  }
  return ValidateTransaction(tx, state, registry);
}

}  // namespace layerbft::l2
