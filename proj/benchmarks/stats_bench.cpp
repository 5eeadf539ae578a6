// Copyright 2026 The adapteval Authors
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

#include <random>
#include <vector>

#include "adapteval/stats.hpp"

namespace {

std::vector<double> ratings(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> v(1, 5);
  std::vector<double> out(n);
  for (auto& x : out) x = v(rng);
  return out;
}

void BM_KendallNormal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = ratings(n, 1);
  const auto y = ratings(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(adapteval::kendall_tau_b(x, y).tau);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallNormal)->RangeMultiplier(8)->Range(64, 1 << 18)->Complexity(benchmark::oNLogN);

void BM_KendallExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = ratings(n, 3);
  const auto y = ratings(n, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adapteval::kendall_tau_b(x, y, adapteval::PValueMethod::Exact).p_value);
  }
}
BENCHMARK(BM_KendallExact)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
