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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "layerbft/core/digest.hpp"
#include "layerbft/core/ledger.hpp"
#include "layerbft/l2/validation.hpp"
#include "layerbft/registry/workflow.hpp"
#include "layerbft/sim/cluster.hpp"

namespace {

using namespace layerbft;

void BM_Sha256(benchmark::State &state)
{
  std::string data(static_cast<std::size_t>(state.range(0)), 'x');
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(Sha256(data));
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sha256)->Arg(64)->Arg(4096);

Transaction CreatePackageTx(Registry const &registry)
{
  Transaction tx;
  tx.request       = CreatePackageRequest("bench", 1, "pkg-bench", {"a", "b", "c"});
  tx.response      = registry.Respond(tx.request, AppState{});
  tx.originator_id = "l2-0";
  Sign(tx);
  return tx;
}

void BM_EncodeTransaction(benchmark::State &state)
{
  auto registry = MakeSupplyChainRegistry();
  auto tx       = CreatePackageTx(registry);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(Serialize(tx));
  }
}
BENCHMARK(BM_EncodeTransaction);

void BM_CheckTransaction(benchmark::State &state)
{
  auto     registry = MakeSupplyChainRegistry();
  auto     tx       = CreatePackageTx(registry);
  AppState empty;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(l2::CheckTransaction(tx, empty, registry));
  }
}
BENCHMARK(BM_CheckTransaction);

void BM_VerifyChain(benchmark::State &state)
{
  sim::ClusterConfig config;
  config.capture_trace = false;
  sim::Cluster cluster(config);
  for (int i = 0; i < state.range(0); ++i)
  {
    cluster.RunWorkflow("pkg-" + std::to_string(i));
  }
  cluster.Settle();
  auto const &ledger = cluster.l1(0).ledger();
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(VerifyChain(ledger, cluster.l1_ids()));
  }
  state.counters["blocks"] = static_cast<double>(ledger.size());
}
BENCHMARK(BM_VerifyChain)->Arg(8);

// Wall-clock cost of simulating one full workflow plus commit.
void BM_SimulatedWorkflow(benchmark::State &state)
{
  sim::ClusterConfig config;
  config.n_l1          = static_cast<std::size_t>(state.range(0));
  config.n_l2          = static_cast<std::size_t>(state.range(1));
  config.capture_trace = false;
  sim::Cluster cluster(config);
  std::size_t  i = 0;
  for (auto _ : state)
  {
    auto wf = cluster.RunWorkflow("pkg-" + std::to_string(i++));
    if (!wf.ok)
    {
      state.SkipWithError(wf.failure.c_str());
      break;
    }
    cluster.Settle();
  }
}
BENCHMARK(BM_SimulatedWorkflow)->Args({4, 1})->Args({16, 2})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
