// Copyright 2026 The phonoread Authors
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

// OpenMP shot sampling vs the serial reference. Both produce identical
// records; only wall time differs.

#include <benchmark/benchmark.h>

#include "phonoread/shots.hpp"

namespace {

using namespace phonoread;

const ShotRunner& hom_runner() {
  static const ShotRunner runner = [] {
    ProtocolConfig c;
    const auto basis = build_space(2, 3, c.required_levels());
    const std::array<std::size_t, 2> ones{1, 1};
    const HoppingParams hop{constants::kTwoPi * 3e3, constants::kTwoPi * 3e6, 2};
    return ShotRunner(StateVector::fock(basis, ones), 40e-6, c, hop);
  }();
  return runner;
}

void BM_SampleShotsParallel(benchmark::State& state) {
  const auto shots = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_shots(hom_runner(), shots, 20260101));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleShotsSerial(benchmark::State& state) {
  const auto shots = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_shots_serial(hom_runner(), shots, 20260101));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SampleShotsParallel)->Arg(500)->Arg(10000)->UseRealTime();
BENCHMARK(BM_SampleShotsSerial)->Arg(500)->Arg(10000)->UseRealTime();
BENCHMARK_MAIN();
