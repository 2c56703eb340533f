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

// layerbft: benchmark sweeps, scenario runs and the HTTP gateway.

#include <csignal>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "layerbft/bench/emit.hpp"
#include "layerbft/bench/runner.hpp"
#include "layerbft/gateway/server.hpp"
#include "layerbft/sim/scenario.hpp"

namespace {

using namespace layerbft;

simnet::VirtualTime FromMillis(double ms)
{
  return static_cast<simnet::VirtualTime>(std::llround(ms * simnet::kMillisecond));
}

struct BenchArgs
{
  std::vector<std::size_t> l1_nodes = {4, 7, 10, 13, 16};
  std::vector<std::size_t> l2_nodes = {1, 2};
  std::size_t              iterations = 100;
  std::uint64_t            seed       = 42;
  double                   base_delay_ms = simnet::ToMillis(sim::DefaultLatencyModel().base_delay);
  double                   jitter_ms     = simnet::ToMillis(sim::DefaultLatencyModel().jitter);
  std::string              format        = "table";
  std::string              out           = "-";
  std::string              trace_dir;
  std::size_t              jobs    = 0;
  bool                     compare = false;
};

int RunBench(BenchArgs const &a)
{
  bench::SweepOptions o;
  o.l1_nodes                = a.l1_nodes;
  o.l2_nodes                = a.l2_nodes;
  o.iterations              = a.iterations;
  o.seed                    = a.seed;
  o.jobs                    = a.jobs;
  o.base.latency.base_delay = FromMillis(a.base_delay_ms);
  o.base.latency.jitter     = FromMillis(a.jitter_ms);
  o.base.capture_trace      = !a.trace_dir.empty();
  if (!a.trace_dir.empty())
  {
    std::filesystem::create_directories(a.trace_dir);
    o.on_result = [&a](bench::RunOutput const &r) {
      auto          path = std::filesystem::path(a.trace_dir) / ("trace-" + r.report.config + ".jsonl");
      std::ofstream f(path);
      if (!f)
      {
        throw bench::IoError("cannot write " + path.string());
      }
      r.trace.WriteJsonLines(f);
    };
  }

  std::vector<bench::LatencyReport> reports;
  try
  {
    reports = bench::Sweep(o);
  }
  catch (bench::RunError const &e)
  {
    std::cerr << "run failed: " << e.what() << " (trace digest " << e.trace().digest.Hex()
              << ", " << e.trace().events.size() << " captured events)\n";
    if (!a.trace_dir.empty())
    {
      std::ofstream f(std::filesystem::path(a.trace_dir) / "trace-failed.jsonl");
      e.trace().WriteJsonLines(f);
    }
    return 1;
  }

  auto text = bench::Render(reports, bench::FormatFromName(a.format));
  if (a.compare)
  {
    for (auto const &x : reports)
    {
      for (auto const &y : reports)
      {
        if (x.n_l1 == y.n_l1 && x.n_l2 < y.n_l2)
        {
          text += "\n" + bench::ToTable(bench::Compare(x, y));
        }
      }
    }
  }
  bench::WriteOutput(a.out, text);
  return 0;
}

struct RunArgs
{
  std::string scenario;
  std::string trace;
  std::string out = "-";
};

int RunScenarioCmd(RunArgs const &a)
{
  auto s = sim::LoadScenario(a.scenario);
  if (!a.trace.empty())
  {
    s.config.capture_trace = true;
  }
  sim::Cluster cluster(s.config);
  auto         outcome = sim::RunScenario(cluster, s.actions, s.run_until);
  if (!a.trace.empty())
  {
    std::ofstream f(a.trace);
    if (!f)
    {
      throw bench::IoError("cannot write " + a.trace);
    }
    cluster.network().trace().WriteJsonLines(f);
  }
  bench::WriteOutput(a.out, outcome.ToJson(cluster).dump(2) + "\n");
  return outcome.checks.ok() ? 0 : 1;
}

struct ServeArgs
{
  std::string   host = "127.0.0.1";
  int           port = 8080;
  std::size_t   n_l1 = 4;
  std::size_t   n_l2 = 1;
  std::uint64_t seed = 42;
  std::size_t   l2_index          = 0;
  double        commit_timeout_ms = 30000;
  bool          driven            = false;
  bool          demo_signing      = true;
};

volatile std::sig_atomic_t g_stop = 0;

void OnSignal(int)
{
  g_stop = 1;
}

int Serve(ServeArgs const &a)
{
  gateway::LiveOptions live;
  live.config.n_l1 = a.n_l1;
  live.config.n_l2 = a.n_l2;
  live.config.seed = a.seed;
  // A long-running server would otherwise keep every message forever.
  live.config.capture_trace = false;
  live.config.Validate();
  live.l2_index = a.l2_index;
  live.pacing   = a.driven ? gateway::Pacing::kDriven : gateway::Pacing::kRealTime;
  gateway::LiveCluster cluster(live);

  gateway::ServerOptions opts;
  opts.host                         = a.host;
  opts.port                         = a.port;
  opts.commit_timeout               = FromMillis(a.commit_timeout_ms);
  opts.mapping.sign_missing_origin  = a.demo_signing;
  gateway::Server server(cluster, opts);
  server.Start();
  std::cerr << "gateway for " << cluster.node_id() << " (" << live.config.Label()
            << ") listening on " << a.host << ":" << server.port() << "\n";
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  while (g_stop == 0)
  {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  server.Stop();
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Two-layer BFT simulation: benchmark sweeps, scenarios and HTTP gateway"};
  app.require_subcommand(1);

  BenchArgs b;
  auto     *bench_cmd = app.add_subcommand("bench", "Sweep cluster configurations and report latencies");
  bench_cmd->add_option("--l1-nodes", b.l1_nodes, "L1 cluster sizes")->delimiter(',');
  bench_cmd->add_option("--l2-nodes", b.l2_nodes, "L2 cluster sizes")->delimiter(',');
  bench_cmd->add_option("--iterations", b.iterations, "Workflows per configuration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--seed", b.seed, "Base seed; configuration i uses seed + i")
      ->capture_default_str();
  bench_cmd->add_option("--base-delay-ms", b.base_delay_ms, "Per-hop base delay")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench_cmd->add_option("--jitter-ms", b.jitter_ms, "Uniform per-hop jitter bound")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench_cmd->add_option("--format", b.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();
  bench_cmd->add_option("--out", b.out, "Output file, - for stdout")->capture_default_str();
  bench_cmd->add_option("--trace-dir", b.trace_dir, "Write one JSON-lines trace per configuration");
  bench_cmd->add_option("--jobs", b.jobs, "Parallel configurations (0 = all cores)");
  bench_cmd->add_flag("--compare", b.compare, "Append single- vs dual-L2 comparisons");

  RunArgs r;
  auto   *run_cmd = app.add_subcommand("run", "Play a scenario script and check invariants");
  run_cmd->add_option("--scenario", r.scenario, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--trace", r.trace, "Write the network trace as JSON lines");
  run_cmd->add_option("--out", r.out, "Report file, - for stdout")->capture_default_str();

  ServeArgs s;
  auto     *serve_cmd = app.add_subcommand("serve", "Run an in-process cluster behind the HTTP gateway");
  serve_cmd->add_option("--host", s.host)->capture_default_str();
  serve_cmd->add_option("--port", s.port, "0 picks a free port")->capture_default_str();
  serve_cmd->add_option("--l1-nodes", s.n_l1)->capture_default_str();
  serve_cmd->add_option("--l2-nodes", s.n_l2)->capture_default_str();
  serve_cmd->add_option("--seed", s.seed)->capture_default_str();
  serve_cmd->add_option("--l2-index", s.l2_index, "L2 node fronted by this gateway")
      ->capture_default_str();
  serve_cmd->add_option("--commit-timeout-ms", s.commit_timeout_ms,
                        "Commit wait before answering 202")
      ->capture_default_str();
  serve_cmd->add_flag("--driven", s.driven, "Advance virtual time only while serving requests");
  serve_cmd->add_flag("--demo-signing,!--no-demo-signing", s.demo_signing,
                      "Sign POST /packages bodies that lack a supplier signature")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (*bench_cmd)
    {
      return RunBench(b);
    }
    if (*run_cmd)
    {
      return RunScenarioCmd(r);
    }
    return Serve(s);
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
