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


#include <memory>

#include <benchmark/benchmark.h>

#include "freeshift/free_group.hpp"
#include "freeshift/prob.hpp"

namespace {

using freeshift::GroupElement;

const freeshift::ProbVector& p532() {
  static const auto p =
      freeshift::ProbVector::from_decimal_strings(std::vector<std::string>{"0.5", "0.3", "0.2"});
  return p;
}

void BM_ValueAt(benchmark::State& state) {
  const freeshift::Configuration x(7, p532());
  const auto coords = freeshift::ball(2, 4).elements;
  for (auto _ : state) {
    for (const auto& g : coords) benchmark::DoNotOptimize(x.value_at(g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(coords.size()));
}
BENCHMARK(BM_ValueAt);

// Each view layer adds one re-indexing per lookup.
void BM_ValueAtShifted(benchmark::State& state) {
  freeshift::Configuration x(7, p532());
  const auto a = GroupElement::generator_power(1);
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    x = x.with_view(std::make_shared<freeshift::TranslationMap>(a));
  }
  const auto coords = freeshift::ball(2, 4).elements;
  for (auto _ : state) {
    for (const auto& g : coords) benchmark::DoNotOptimize(x.value_at(g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(coords.size()));
}
BENCHMARK(BM_ValueAtShifted)->Arg(1)->Arg(8);

}  // namespace
