// Copyright 2026 The freeshift Authors.
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

#include "freeshift/beta.hpp"
#include "freeshift/prob.hpp"

namespace {

const freeshift::ProbVector& p532() {
  static const auto p =
      freeshift::ProbVector::from_decimal_strings(std::vector<std::string>{"0.5", "0.3", "0.2"});
  return p;
}

void BM_BetaClosed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(freeshift::beta_closed(p532(), 0.5));
}
BENCHMARK(BM_BetaClosed);

void BM_BetaMonteCarlo(benchmark::State& state) {
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(freeshift::beta_limit_mc(p532(), 0.5, 8, 50'000, 0, workers));
  }
  state.SetItemsProcessed(state.iterations() * 50'000);
}
BENCHMARK(BM_BetaMonteCarlo)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace
