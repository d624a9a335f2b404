// Copyright 2026 The Authors.
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

// Parallel against serial Monte Carlo and exact offline enumeration.
// Thread count follows OMP_NUM_THREADS (capped by OSM_THREADS).

#include <benchmark/benchmark.h>

#include "osm/algorithms.hpp"
#include "osm/estimate.hpp"
#include "osm/generators.hpp"
#include "osm/oracles.hpp"
#include "osm/pipeline.hpp"

namespace {

const osm::Instance& hard() {
  static const osm::Instance inst = osm::gen_hard_instance(1e-2);
  return inst;
}

const osm::Instance& wide() {
  static const osm::Instance inst = [] {
    osm::RandomInstanceParams p;
    p.n = 6;
    p.T = 16;
    p.density = 0.6;
    p.seed = 3;
    return osm::gen_random_instance(p);
  }();
  return inst;
}

std::shared_ptr<const osm::Policy> small_slack() {
  static const osm::PipelineDecision d = osm::plan(hard(), osm::practical_config());
  static const auto pol = std::make_shared<osm::SmallSlackPolicy>(d.normalized, *d.decomposition, d.config);
  return pol;
}

void BM_EstimateParallel(benchmark::State& state) {
  const auto pol = small_slack();
  for (auto _ : state) {
    benchmark::DoNotOptimize(osm::estimate(*pol, hard(), state.range(0), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EstimateSerial(benchmark::State& state) {
  const auto pol = small_slack();
  for (auto _ : state) {
    benchmark::DoNotOptimize(osm::estimate_serial(*pol, hard(), state.range(0), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OfflineExactParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(osm::offline_optimum(wide(), osm::OfflineMode::kExact).value);
}

void BM_OfflineExactSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(osm::offline_optimum_exact_serial(wide()));
}

}  // namespace

BENCHMARK(BM_EstimateParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OfflineExactParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OfflineExactSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
