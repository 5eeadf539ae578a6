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
#include <string>

#include "adapteval/textmatch.hpp"

namespace {

using namespace adapteval::textmatch;

std::string words(std::size_t n, unsigned seed) {
  static const char* vocab[] = {"the", "turkey", "was", "dry", "but", "pumpkin", "pie", "saved",
                                "thanksgiving", "dinner", "again", "at", "grandma", "house"};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(vocab) - 1);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += (i ? " " : "") + std::string(vocab[pick(rng)]);
  return s;
}

void BM_SimilarityRatio(benchmark::State& state) {
  const auto a = words(static_cast<std::size_t>(state.range(0)), 1);
  const auto b = words(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(similarity_ratio(a, b));
}
BENCHMARK(BM_SimilarityRatio)->Arg(2)->Arg(8)->Arg(32);

void BM_TokenSetRatio(benchmark::State& state) {
  const auto a = words(static_cast<std::size_t>(state.range(0)), 3);
  const auto b = words(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(token_set_ratio(a, b));
}
BENCHMARK(BM_TokenSetRatio)->Arg(2)->Arg(8)->Arg(32);

// One CSI lookup against a dialog of the given token length.
void BM_ContainsFuzzy(benchmark::State& state) {
  const auto hay = words(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(contains_fuzzy("pumpkin pie", hay));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ContainsFuzzy)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
