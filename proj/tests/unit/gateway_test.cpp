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

#include <gtest/gtest.h>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "layerbft/core/json.hpp"
#include "layerbft/gateway/server.hpp"
#include "layerbft/registry/workflow.hpp"

namespace layerbft::gateway {
namespace {

using nlohmann::json;

// Session ids contain '#', which a URL must carry escaped.
std::string Enc(std::string s)
{
  for (auto p = s.find('#'); p != std::string::npos; p = s.find('#', p))
  {
    s.replace(p, 1, "%23");
  }
  return s;
}

class GatewayTest : public ::testing::Test
{
protected:
  void SetUp() override { Boot({}); }

  void Boot(ServerOptions so)
  {
    server_.reset();
    LiveOptions lo;
    lo.config.n_l1 = 4;
    lo.config.n_l2 = 1;
    lo.config.seed = 11;
    cluster_       = std::make_unique<LiveCluster>(lo);
    so.port        = 0;
    server_        = std::make_unique<Server>(*cluster_, so);
    server_->Start();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", server_->port());
    client_->set_read_timeout(30, 0);
  }

  void TearDown() override
  {
    client_.reset();
    if (server_)
    {
      server_->Stop();
    }
  }

  struct Reply
  {
    int                     status = 0;
    json                    env;
    httplib::Headers        headers;
  };

  Reply Post(std::string const &path, json const &body, httplib::Headers h = {})
  {
    auto r = client_->Post(path, h, body.dump(), "application/json");
    EXPECT_TRUE(r) << path;
    return {r->status, json::parse(r->body), r->headers};
  }

  Reply PostRaw(std::string const &path, std::string const &body)
  {
    auto r = client_->Post(path, body, "application/json");
    EXPECT_TRUE(r) << path;
    return {r->status, json::parse(r->body), r->headers};
  }

  Reply Get(std::string const &path)
  {
    auto r = client_->Get(path);
    EXPECT_TRUE(r) << path;
    return {r->status, json::parse(r->body), r->headers};
  }

  static json PackageBody(std::string const &id)
  {
    auto req = CreatePackageRequest("console", 0, id, {"a", "b"});
    return ToJson(Value{req.body});
  }

  std::string StartSession(std::string const &pkg)
  {
    EXPECT_EQ(Post("/packages", PackageBody(pkg)).status, 201);
    auto s = Post("/sessions", {{"package_id", pkg}});
    EXPECT_EQ(s.status, 201) << s.env.dump();
    return s.env.at("body").at("session_id").get<std::string>();
  }

  std::unique_ptr<LiveCluster>     cluster_;
  std::unique_ptr<Server>          server_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(GatewayTest, Health)
{
  auto r = Get("/healthz");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.env.at("status"), "OK");
  EXPECT_EQ(r.env.at("body").at("config"), "4-1");
  EXPECT_EQ(r.env.at("body").at("node_id"), "l2-0");
}

TEST_F(GatewayTest, FullWorkflowThenReads)
{
  auto sid = StartSession("pkg-gw");
  for (auto step : {"scan", "validate", "quality-check", "label"})
  {
    auto r = Post("/sessions/" + Enc(sid) + "/" + step, json::object());
    ASSERT_EQ(r.status, 200) << step << " " << r.env.dump();
    EXPECT_EQ(r.env.at("status"), "OK");
    EXPECT_GE(r.env.at("latency_ms").get<double>(), 0.0);
    EXPECT_LE(r.env.at("t_server_in").get<std::int64_t>(),
              r.env.at("t_server_out").get<std::int64_t>());
  }
  auto c = Post("/sessions/" + Enc(sid) + "/commit", json::object());
  ASSERT_EQ(c.status, 200) << c.env.dump();
  EXPECT_EQ(c.env.at("endpoint"), "commit");
  auto tx = c.env.at("body").at("l1_ref").at("tx_hash").get<std::string>();

  auto s = Get("/sessions/" + Enc(sid));
  ASSERT_EQ(s.status, 200);
  EXPECT_EQ(s.env.at("body").at("status"), "Committed");
  EXPECT_EQ(s.env.at("body").at("stage"), "Labeled");
  EXPECT_EQ(s.env.at("body").at("l1_ref").at("tx_hash"), tx);
  EXPECT_EQ(s.env.at("body").at("package_id"), "pkg-gw");

  auto t = Get("/tx/" + tx);
  ASSERT_EQ(t.status, 200) << t.env.dump();
  EXPECT_EQ(t.env.at("body").at("session_id"), sid);
  EXPECT_EQ(t.env.at("body").at("l1_ref"), c.env.at("body").at("l1_ref"));

  auto b = Get("/blocks");
  ASSERT_EQ(b.status, 200);
  ASSERT_FALSE(b.env.at("body").empty());
  auto h = c.env.at("body").at("l1_ref").at("block_height").get<std::uint64_t>();
  auto one = Get("/blocks/" + std::to_string(h));
  EXPECT_EQ(one.status, 200);
  EXPECT_EQ(Get("/blocks/999").status, 404);
  EXPECT_EQ(Get("/tx/00").status, 404);
  EXPECT_EQ(Get("/sessions/nobody%231").status, 404);
}

TEST_F(GatewayTest, StageOrderIsConflict)
{
  auto sid = StartSession("pkg-order");
  auto r   = Post("/sessions/" + Enc(sid) + "/label", json::object());
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(r.env.at("status"), "REJECTED");
  EXPECT_EQ(r.env.at("body").at("error"), "stage_order");
}

TEST_F(GatewayTest, MalformedInput)
{
  auto bad = PostRaw("/packages", "{not json");
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(bad.env.at("body").at("error"), "bad_request");
  EXPECT_EQ(PostRaw("/packages", "[1,2]").status, 400);
  EXPECT_EQ(Post("/nowhere", json::object()).status, 404);
  EXPECT_EQ(Get("/nowhere").status, 404);
  EXPECT_EQ(Post("/packages", PackageBody("p"), {{"X-Nonce", "abc"}}).status, 400);
}

TEST_F(GatewayTest, ReplayedNonce)
{
  // Nonces are tracked per client within a session.
  auto             sid = StartSession("pkg-replay");
  httplib::Headers h{{"X-Client-Id", "console"}, {"X-Nonce", "1000"}};
  EXPECT_EQ(Post("/sessions/" + Enc(sid) + "/scan", json::object(), h).status, 200);
  auto r = Post("/sessions/" + Enc(sid) + "/validate", json::object(), h);
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(r.env.at("body").at("error"), "replay");
}

TEST_F(GatewayTest, RequestIdEchoed)
{
  auto r = client_->Get("/healthz", {{"X-Request-Id", "abc-1"}});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->get_header_value("X-Request-Id"), "abc-1");
  EXPECT_EQ(json::parse(r->body).at("request_id"), "abc-1");
}

TEST_F(GatewayTest, Cors)
{
  auto r = client_->Options("/packages");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 204);
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
  auto g = client_->Get("/healthz");
  EXPECT_EQ(g->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(GatewayTest, SlowCommitAnswersPending)
{
  ServerOptions so;
  so.commit_timeout = simnet::kMillisecond;
  Boot(so);
  auto sid = StartSession("pkg-slow");
  for (auto step : {"scan", "validate", "quality-check", "label"})
  {
    ASSERT_EQ(Post("/sessions/" + Enc(sid) + "/" + step, json::object()).status, 200);
  }
  auto c = Post("/sessions/" + Enc(sid) + "/commit", json::object());
  EXPECT_EQ(c.status, 202);
  EXPECT_EQ(c.env.at("status"), "Pending");
  auto loc = c.headers.find("Location");
  ASSERT_NE(loc, c.headers.end());
  EXPECT_EQ(loc->second, "/sessions/" + Enc(sid));
  cluster_->Advance(5 * simnet::kSecond);
  auto s = Get(loc->second);
  EXPECT_EQ(s.env.at("body").at("status"), "Committed");
}

TEST_F(GatewayTest, MissingSignatureNeedsDemoMode)
{
  auto body = PackageBody("pkg-unsigned");
  body.erase("signature");
  EXPECT_EQ(Post("/packages", body).status, 400);

  ServerOptions so;
  so.mapping.sign_missing_origin = true;
  Boot(so);
  EXPECT_EQ(Post("/packages", body).status, 201);
}

TEST(HttpMapping, Routes)
{
  auto c = MapHttp("/sessions/l2-0#3/quality-check", "", "cl", 4);
  EXPECT_EQ(c.kind, CallKind::kService);
  EXPECT_EQ(c.request.route, kRouteQualityCheck);
  EXPECT_EQ(c.request.session_id, "l2-0#3");
  EXPECT_EQ(c.request.client_id, "cl");
  EXPECT_EQ(c.request.nonce, 4u);
  EXPECT_EQ(c.endpoint, "quality_check");
  EXPECT_FALSE(c.creates);

  auto s = MapHttp("/sessions", R"({"package_id":"p"})", "cl", 1);
  EXPECT_TRUE(s.creates);
  EXPECT_EQ(s.request.route, kRouteStartSession);
  EXPECT_EQ(s.request.body.at("package_id").AsString(), "p");

  EXPECT_EQ(MapHttp("/sessions/x/commit", "", "cl", 1).kind, CallKind::kCommit);
  EXPECT_EQ(MapHttp("/sessions/x/abort", "", "cl", 1).kind, CallKind::kAbort);
  EXPECT_EQ(MapHttp("/sessions/x/abort", "", "cl", 1).session_id, "x");

  auto status = [](auto path, auto body) {
    try
    {
      MapHttp(path, body, "cl", 1);
    }
    catch (MappingError const &e)
    {
      return e.http_status();
    }
    return 0;
  };
  EXPECT_EQ(status("/sessions/x/fly", ""), 404);
  EXPECT_EQ(status("/sessions//scan", ""), 404);
  EXPECT_EQ(status("/", ""), 404);
  EXPECT_EQ(status("/sessions", "nope"), 400);
  EXPECT_EQ(status("/sessions", "\"str\""), 400);
}

TEST(HttpMapping, StatusIsTotal)
{
  for (auto code : kAllErrorCodes)
  {
    if (code == ErrorCode::kNone)
    {
      continue;
    }
    auto s = HttpStatusFor(code);
    EXPECT_GE(s, 400) << ErrorCodeName(code);
    EXPECT_LT(s, 600) << ErrorCodeName(code);
  }
  EXPECT_EQ(HttpStatusFor(ErrorCode::kStageOrder), 409);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kNotFound), 404);
  EXPECT_EQ(HttpStatusFor(ErrorCode::kConsensusRejected), 422);
  EXPECT_EQ(HttpStatusFor(ServiceResponse::Ok({}), true), 201);
  EXPECT_EQ(HttpStatusFor(ServiceResponse::Ok({}), false), 200);
  EXPECT_EQ(HttpStatusFor(ServiceResponse::Reject(ErrorCode::kReplay, "x"), true), 409);
}

}  // namespace
}  // namespace layerbft::gateway
