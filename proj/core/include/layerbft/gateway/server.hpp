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

#include <memory>
#include <stdexcept>
#include <string>

#include "layerbft/gateway/http_mapping.hpp"
#include "layerbft/gateway/live_cluster.hpp"

namespace layerbft::gateway {

class StartupError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct ServerOptions
{
  std::string host = "127.0.0.1";
  /// 0 binds an ephemeral port; see Server::port().
  int         port = 8080;
  MapOptions  mapping;
  /// Budget for ordinary calls and for commit; a commit that exceeds its
  /// budget answers 202 with a Location to poll.
  VirtualTime request_timeout = 60 * simnet::kSecond;
  VirtualTime commit_timeout  = 30 * simnet::kSecond;
  std::string default_client  = "console";
};

/// HTTP/JSON front for one L2 node of a LiveCluster. Holds no state of its
/// own beyond the listening socket.
class Server
{
public:
  Server(LiveCluster &cluster, ServerOptions options);
  Server(Server const &)            = delete;
  Server &operator=(Server const &) = delete;
  ~Server();

  /// Binds and starts serving on a background thread. Throws StartupError.
  void Start();
  /// Blocks until Stop() is called from elsewhere.
  void Wait();
  void Stop();
  int  port() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace layerbft::gateway
