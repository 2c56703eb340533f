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

#include "layerbft/sim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <set>

#include "layerbft/core/json.hpp"

namespace layerbft::sim {
namespace {

using nlohmann::json;

VirtualTime Millis(json const &v)
{
  if (!v.is_number())
  {
    throw ScenarioError("expected a number of milliseconds, got " + v.dump());
  }
  auto ms = v.get<double>();
  if (ms < 0)
  {
    throw ScenarioError("negative time " + v.dump());
  }
  return static_cast<VirtualTime>(std::llround(ms * simnet::kMillisecond));
}

std::string Str(json const &obj, char const *key)
{
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
  {
    throw ScenarioError(std::string{"action needs string field '"} + key + "'");
  }
  return it->get<std::string>();
}

std::size_t L2Index(Cluster const &c, json const &args)
{
  auto idx = args.value("l2", 0);
  if (idx < 0 || static_cast<std::size_t>(idx) >= c.n_l2())
  {
    throw ScenarioError("no L2 node with index " + std::to_string(idx));
  }
  return static_cast<std::size_t>(idx);
}

/// Session id named directly or through the package it serves.
std::string ResolveSession(Cluster const &c, json const &args)
{
  if (args.contains("session_id"))
  {
    return Str(args, "session_id");
  }
  auto pkg = Str(args, "package_id");
  for (std::size_t i = 0; i < c.n_l2(); ++i)
  {
    for (auto const &[sid, rec] : c.l2(i).app_state().sessions)
    {
      if (rec.package_id == pkg)
      {
        return sid;
      }
    }
  }
  throw ScenarioError("no session for package " + pkg);
}

/// Drives the five workflow steps (and optional commit) asynchronously,
/// each call issued when the previous response arrives.
struct WorkflowDriver : std::enable_shared_from_this<WorkflowDriver>
{
  Cluster                   *cluster = nullptr;
  std::vector<ClientResult> *sink    = nullptr;
  std::string                package_id;
  std::string                session_id;
  std::size_t                l2     = 0;
  bool                       commit = true;
  std::size_t                step   = 0;

  void Next()
  {
    auto &c = *cluster;
    std::uint64_t id = 0;
    if (step == 0)
    {
      id = c.SendRequest(CreatePackageRequest(c.client_id(), c.NextNonce(), package_id,
                                              {"item-a", "item-b", "item-c"}),
                         l2);
    }
    else if (step == 1)
    {
      id = c.SendRequest(StartSessionRequest(c.client_id(), c.NextNonce(), package_id), l2);
    }
    else if (step < 6)
    {
      auto route = kWorkflowSteps[step - 1].first;
      id = c.SendRequest(StageRequest(route, c.client_id(), c.NextNonce(), session_id), l2);
    }
    else if (step == 6 && commit)
    {
      id = c.SendCommit(session_id, l2);
    }
    else
    {
      return;
    }
    c.OnCompletion(id, [self = shared_from_this()](ClientResult const &r) {
      self->sink->push_back(r);
      if (!r.response.ok())
      {
        return;
      }
      if (self->step == 1)
      {
        self->session_id = r.response.body.at("session_id").AsString();
      }
      ++self->step;
      self->Next();
    });
  }
};

void Apply(Cluster &c, ScenarioAction const &a, std::vector<ClientResult> &results)
{
  auto const &args = a.args;
  if (a.action == "workflow")
  {
    auto d        = std::make_shared<WorkflowDriver>();
    d->cluster    = &c;
    d->sink       = &results;
    d->package_id = Str(args, "package_id");
    d->l2         = L2Index(c, args);
    d->commit     = args.value("commit", true);
    d->Next();
  }
  else if (a.action == "request")
  {
    ServiceRequest req;
    req.route     = Str(args, "route");
    req.client_id = args.value("client_id", c.client_id());
    req.nonce     = args.contains("nonce") ? args.at("nonce").get<std::uint64_t>() : c.NextNonce();
    if (args.contains("body"))
    {
      req.body = FromJson(args.at("body")).AsMap();
    }
    if (args.contains("session_id") || args.contains("package_id"))
    {
      if (req.route != kRouteCreatePackage && req.route != kRouteStartSession)
      {
        req.session_id = ResolveSession(c, args);
      }
    }
    auto id = c.SendRequest(std::move(req), L2Index(c, args));
    c.OnCompletion(id, [&results](ClientResult const &r) { results.push_back(r); });
  }
  else if (a.action == "commit" || a.action == "abort")
  {
    auto sid = ResolveSession(c, args);
    auto id  = a.action == "commit" ? c.SendCommit(sid, L2Index(c, args))
                                    : c.SendAbort(sid, L2Index(c, args));
    c.OnCompletion(id, [&results](ClientResult const &r) { results.push_back(r); });
  }
  else if (a.action == "partition")
  {
    std::set<std::string> group;
    for (auto const &n : args.at("nodes"))
    {
      group.insert(n.get<std::string>());
    }
    c.network().Partition(std::move(group));
  }
  else if (a.action == "heal")
  {
    c.network().Heal();
  }
  else if (a.action == "set_behavior")
  {
    c.SetBehavior(Str(args, "node"), simnet::BehaviorFromName(Str(args, "behavior")));
  }
  else if (a.action == "drop_rate")
  {
    c.network().SetDropRate(Str(args, "from"), Str(args, "to"), args.at("rate").get<double>());
  }
  else if (a.action == "restart")
  {
    auto const l1 = args.value("l1", std::size_t{0});
    if (l1 >= c.n_l1())
    {
      throw ScenarioError("no L1 node " + std::to_string(l1));
    }
    c.RestartL2(L2Index(c, args), l1);
  }
  else
  {
    throw ScenarioError("unknown action '" + a.action + "'");
  }
}

}  // namespace

ClusterConfig ParseClusterConfig(json const &j)
{
  static std::set<std::string> const kKeys = {
      "n_l1",        "n_l2",           "seed",          "base_delay_ms", "jitter_ms",
      "behaviors",   "round_timeout_ms", "session_ttl_ms", "capture_trace", "accept_on_peer_timeout"};
  ClusterConfig c;
  if (j.is_null())
  {
    return c;
  }
  if (!j.is_object())
  {
    throw ScenarioError("config must be an object");
  }
  for (auto const &[k, v] : j.items())
  {
    if (!kKeys.contains(k))
    {
      throw ScenarioError("unknown config key '" + k + "'");
    }
  }
  c.n_l1 = j.value("n_l1", c.n_l1);
  c.n_l2 = j.value("n_l2", c.n_l2);
  c.seed = j.value("seed", c.seed);
  if (j.contains("base_delay_ms"))
  {
    c.latency.base_delay = Millis(j.at("base_delay_ms"));
  }
  if (j.contains("jitter_ms"))
  {
    c.latency.jitter = Millis(j.at("jitter_ms"));
  }
  if (j.contains("round_timeout_ms"))
  {
    c.round_timeout = Millis(j.at("round_timeout_ms"));
  }
  if (j.contains("session_ttl_ms"))
  {
    c.session_ttl = Millis(j.at("session_ttl_ms"));
  }
  c.capture_trace          = j.value("capture_trace", c.capture_trace);
  c.accept_on_peer_timeout = j.value("accept_on_peer_timeout", c.accept_on_peer_timeout);
  if (j.contains("behaviors"))
  {
    for (auto const &[node, b] : j.at("behaviors").items())
    {
      c.behaviors[node] = simnet::BehaviorFromName(b.get<std::string>());
    }
  }
  return c;
}

Scenario ParseScenario(json const &j)
{
  Scenario s;
  try
  {
    s.config = ParseClusterConfig(j.value("config", json{}));
    if (j.contains("run_until_ms"))
    {
      s.run_until = Millis(j.at("run_until_ms"));
    }
    for (auto const &a : j.at("actions"))
    {
      ScenarioAction act;
      act.at     = Millis(a.at("at_ms"));
      act.action = a.at("action").get<std::string>();
      act.args   = a;
      s.actions.push_back(std::move(act));
    }
  }
  catch (json::exception const &e)
  {
    throw ScenarioError(std::string{"malformed scenario: "} + e.what());
  }
  catch (std::invalid_argument const &e)
  {
    throw ScenarioError(e.what());
  }
  std::stable_sort(s.actions.begin(), s.actions.end(),
                   [](auto const &a, auto const &b) { return a.at < b.at; });
  return s;
}

Scenario LoadScenario(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ScenarioError("cannot read scenario " + path.string());
  }
  try
  {
    return ParseScenario(json::parse(in));
  }
  catch (json::parse_error const &e)
  {
    throw ScenarioError(path.string() + ": " + e.what());
  }
}

ScenarioOutcome RunScenario(Cluster &cluster, std::vector<ScenarioAction> const &actions,
                            VirtualTime run_until)
{
  ScenarioOutcome out;
  auto           &net   = cluster.network();
  auto const      start = net.Now();
  std::exception_ptr failure;
  for (auto const &a : actions)
  {
    net.SetTimer(start + a.at - net.Now(), [&cluster, &a, &out, &failure] {
      if (failure)
      {
        return;
      }
      try
      {
        Apply(cluster, a, out.results);
      }
      catch (...)
      {
        failure = std::current_exception();
      }
    });
  }
  net.RunUntil([&] { return failure != nullptr; }, start + run_until);
  if (failure)
  {
    std::rethrow_exception(failure);
  }
  out.truncated    = !net.Idle();
  out.checks       = CheckAll(cluster);
  out.trace_digest = net.trace().digest;
  return out;
}

nlohmann::json ScenarioOutcome::ToJson(Cluster const &cluster) const
{
  json j;
  j["config"]       = cluster.config().Label();
  j["seed"]         = cluster.config().seed;
  j["trace_digest"] = trace_digest.Hex();
  j["pending_events"] = truncated;
  json rs           = json::array();
  for (auto const &r : results)
  {
    json e;
    e["endpoint"]   = r.endpoint;
    e["status"]     = ResponseStatusName(r.response.status);
    e["error"]      = ErrorCodeName(r.response.error());
    e["latency_ms"] = simnet::ToMillis(r.latency());
    e["t_req_ms"]   = simnet::ToMillis(r.t_req);
    e["body"]       = layerbft::ToJson(Value{r.response.body});
    rs.push_back(std::move(e));
  }
  j["results"] = std::move(rs);
  json heights;
  for (std::size_t i = 0; i < cluster.n_l1(); ++i)
  {
    heights[cluster.l1(i).id()] = cluster.l1(i).current_height();
  }
  j["l1_heights"] = std::move(heights);
  j["checks"]     = {{"ok", checks.ok()}, {"violations", checks.violations}};
  return j;
}

}  // namespace layerbft::sim
