// Copyright 2026 The qmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qmem/dynamics.hpp"
#include "qmem/metrology.hpp"

namespace {

void BM_design_coupling_sech(benchmark::State &state) {
    const qmem::TimeGrid g = qmem::make_write_grid(-5.0, 1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmem::design_coupling_sech(-5.0, g));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_design_coupling_sech)->Arg(1000)->Arg(10000);

void BM_design_coupling_general(benchmark::State &state) {
    const qmem::TimeGrid g = qmem::make_write_grid(-5.0, 1e-3, 16.0);
    const qmem::Envelope a = qmem::design_coupling_sech(-5.0, g).a_target;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmem::design_coupling_general(a, qmem::MemoryParams{}));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_design_coupling_general);

void BM_run_protocol_coupling(benchmark::State &state) {
    const qmem::Design d = qmem::design_coupling_sech(-5.0, qmem::make_write_grid(-5.0, 1e-3));
    const qmem::ProtocolTiming timing{-5.0, static_cast<double>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmem::run_protocol(qmem::MemoryParams{1.0, 0.01}, d, timing, 1.0));
    }
}
BENCHMARK(BM_run_protocol_coupling)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_run_protocol_detuning(benchmark::State &state) {
    const qmem::Design d = qmem::design_detuning_sech(-5.0, qmem::make_write_grid(-5.0, 1.25e-5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmem::run_protocol(qmem::MemoryParams{}, d, qmem::ProtocolTiming{}, 1.0));
    }
}
BENCHMARK(BM_run_protocol_detuning)->Unit(benchmark::kMillisecond);

void BM_efficiency(benchmark::State &state) {
    const qmem::Design d = qmem::design_coupling_sech(-5.0, qmem::make_write_grid(-5.0, 1e-3));
    const qmem::ProtocolResult r = qmem::run_protocol(qmem::MemoryParams{}, d, qmem::ProtocolTiming{}, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmem::efficiency(r));
    }
}
BENCHMARK(BM_efficiency);

}  // namespace
