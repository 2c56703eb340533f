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

#include "layerbft/gateway/server.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <thread>

#include <httplib.h>

#include "layerbft/core/json.hpp"

namespace layerbft::gateway {
namespace {

constexpr char const *kJson = "application/json";

// Session ids carry '#'; keep them intact inside a URL path.
std::string EscapeSegment(std::string const &s)
{
  std::string out;
  for (char c : s)
  {
    if (c == '#' || c == '%' || c == '/' || c == '?')
    {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", static_cast<unsigned char>(c));
      out += buf;
    }
    else
    {
      out += c;
    }
  }
  return out;
}

struct Context
{
  std::string  request_id;
  std::int64_t t_in = 0;
};

}  // namespace

struct Server::Impl
{
  LiveCluster              &cluster;
  ServerOptions             options;
  httplib::Server           http;
  std::thread               thread;
  int                       bound_port = 0;
  std::atomic<std::uint64_t> next_request{0};

  Impl(LiveCluster &c, ServerOptions o) : cluster(c), options(std::move(o)) {}

  Context Begin(httplib::Request const &req)
  {
    Context ctx;
    ctx.t_in       = WallMicros();
    ctx.request_id = req.get_header_value("X-Request-Id");
    if (ctx.request_id.empty())
    {
      ctx.request_id = "req-" + std::to_string(++next_request);
    }
    return ctx;
  }

  void Reply(httplib::Response &res, Context const &ctx, int http_status, std::string_view status,
             nlohmann::json body, nlohmann::json extra = nlohmann::json::object())
  {
    auto env = Envelope(ctx.request_id, status, std::move(body), ctx.t_in, WallMicros());
    for (auto &[k, v] : extra.items())
    {
      env[k] = v;
    }
    res.status = http_status;
    res.set_header("X-Request-Id", ctx.request_id);
    res.set_content(env.dump(), kJson);
  }

  void Fail(httplib::Response &res, Context const &ctx, int http_status, ErrorCode code,
            std::string const &message)
  {
    Reply(res, ctx, http_status, http_status >= 500 ? "ERROR" : "REJECTED",
          {{"error", std::string{ErrorCodeName(code)}}, {"message", message}});
  }

  void HandlePost(httplib::Request const &req, httplib::Response &res)
  {
    auto ctx    = Begin(req);
    auto client = req.get_header_value("X-Client-Id");
    if (client.empty())
    {
      client = options.default_client;
    }
    std::uint64_t nonce = 0;
    auto          raw   = req.get_header_value("X-Nonce");
    if (raw.empty())
    {
      nonce = cluster.NextNonce();
    }
    else
    {
      auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), nonce);
      if (ec != std::errc{} || p != raw.data() + raw.size())
      {
        return Fail(res, ctx, 400, ErrorCode::kBadRequest, "X-Nonce must be an unsigned integer");
      }
    }

    HttpCall call;
    try
    {
      call = MapHttp(req.path, req.body, client, nonce, options.mapping);
    }
    catch (MappingError const &e)
    {
      return Fail(res, ctx, e.http_status(), e.code(), e.what());
    }

    auto timeout =
        call.kind == CallKind::kCommit ? options.commit_timeout : options.request_timeout;
    auto outcome = cluster.Execute(call, timeout);
    if (!outcome.completed)
    {
      if (call.kind == CallKind::kCommit)
      {
        auto location = "/sessions/" + EscapeSegment(call.session_id);
        res.set_header("Location", location);
        return Reply(res, ctx, 202, "Pending",
                     {{"session_id", call.session_id}, {"poll", location}});
      }
      return Fail(res, ctx, 504, ErrorCode::kInternal, "node did not answer in time");
    }
    auto const &r = outcome.result;
    Reply(res, ctx, HttpStatusFor(r.response, call.creates), ResponseStatusName(r.response.status),
          ToJson(Value{r.response.body}),
          {{"endpoint", call.endpoint}, {"latency_ms", simnet::ToMillis(r.latency())}});
  }

  void Routes()
  {
    http.set_post_routing_handler([](httplib::Request const &, httplib::Response &res) {
      res.set_header("Access-Control-Allow-Origin", "*");
      res.set_header("Access-Control-Allow-Headers",
                     "Content-Type, X-Client-Id, X-Nonce, X-Request-Id");
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Expose-Headers", "Location, X-Request-Id");
    });
    http.Options(".*", [](httplib::Request const &, httplib::Response &res) { res.status = 204; });

    http.Post(".*", [this](httplib::Request const &req, httplib::Response &res) {
      HandlePost(req, res);
    });

    http.Get("/healthz", [this](httplib::Request const &req, httplib::Response &res) {
      Reply(res, Begin(req), 200, "OK", cluster.Health());
    });
    http.Get(R"(/sessions/([^/]+))", [this](httplib::Request const &req, httplib::Response &res) {
      auto ctx = Begin(req);
      if (auto s = cluster.SessionStatus(req.matches[1]))
      {
        return Reply(res, ctx, 200, "OK", *s);
      }
      Fail(res, ctx, 404, ErrorCode::kNotFound, "unknown session " + req.matches[1].str());
    });
    http.Get(R"(/tx/([^/]+))", [this](httplib::Request const &req, httplib::Response &res) {
      auto ctx = Begin(req);
      if (auto t = cluster.Tx(req.matches[1]))
      {
        return Reply(res, ctx, 200, "OK", *t);
      }
      Fail(res, ctx, 404, ErrorCode::kNotFound, "no committed tx " + req.matches[1].str());
    });
    http.Get("/blocks", [this](httplib::Request const &req, httplib::Response &res) {
      Reply(res, Begin(req), 200, "OK", cluster.Blocks());
    });
    http.Get(R"(/blocks/(\d+))", [this](httplib::Request const &req, httplib::Response &res) {
      auto          ctx = Begin(req);
      std::uint64_t h   = 0;
      auto          s   = req.matches[1].str();
      auto [p, ec]      = std::from_chars(s.data(), s.data() + s.size(), h);
      if (ec == std::errc{} && p == s.data() + s.size())
      {
        if (auto b = cluster.Block(h))
        {
          return Reply(res, ctx, 200, "OK", *b);
        }
      }
      Fail(res, ctx, 404, ErrorCode::kNotFound, "no block at height " + s);
    });

    http.set_error_handler([this](httplib::Request const &req, httplib::Response &res) {
      if (!res.body.empty())
      {
        return httplib::Server::HandlerResponse::Unhandled;
      }
      auto status = res.status;
      Fail(res, Begin(req), status, status == 404 ? ErrorCode::kNotFound : ErrorCode::kBadRequest,
           "no route for " + req.method + " " + req.path);
      return httplib::Server::HandlerResponse::Handled;
    });
    http.set_exception_handler(
        [this](httplib::Request const &req, httplib::Response &res, std::exception_ptr ep) {
          std::string what = "unknown error";
          try
          {
            std::rethrow_exception(ep);
          }
          catch (std::exception const &e)
          {
            what = e.what();
          }
          catch (...)
          {
          }
          Fail(res, Begin(req), 500, ErrorCode::kInternal, what);
        });
  }
};

Server::Server(LiveCluster &cluster, ServerOptions options)
    : impl_(std::make_unique<Impl>(cluster, std::move(options)))
{
  impl_->Routes();
}

Server::~Server()
{
  Stop();
}

void Server::Start()
{
  auto &i = *impl_;
  if (i.options.port == 0)
  {
    i.bound_port = i.http.bind_to_any_port(i.options.host);
    if (i.bound_port <= 0)
    {
      throw StartupError("cannot bind " + i.options.host);
    }
  }
  else
  {
    if (!i.http.bind_to_port(i.options.host, i.options.port))
    {
      throw StartupError("cannot bind " + i.options.host + ":" + std::to_string(i.options.port));
    }
    i.bound_port = i.options.port;
  }
  i.thread = std::thread([&i] { i.http.listen_after_bind(); });
  i.http.wait_until_ready();
}

void Server::Wait()
{
  if (impl_->thread.joinable())
  {
    impl_->thread.join();
  }
}

void Server::Stop()
{
  if (!impl_)
  {
    return;
  }
  impl_->http.stop();
  Wait();
}

int Server::port() const
{
  return impl_->bound_port;
}

}  // namespace layerbft::gateway
