// Copyright (c) 2026 labelcheck authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "labelcheck/alignment_graph.h"
#include "labelcheck/force_decoder.h"

namespace labelcheck {
namespace {

UnitInventory Inventory(int size) {
  std::vector<std::string> symbols = {"<blk>"};
  for (int i = 1; i < size; ++i) symbols.push_back("u" + std::to_string(i));
  return UnitInventory(std::move(symbols));
}

PosteriorMatrix Posteriors(int frames, int units, std::mt19937& rng) {
  std::normal_distribution<float> logit(0.0f, 2.0f);
  PosteriorMatrix m(frames, units);
  for (int t = 0; t < frames; ++t) {
    double sum = 0.0;
    for (int u = 0; u < units; ++u) {
      m(t, u) = logit(rng);
      sum += std::exp(m(t, u));
    }
    const auto lse = static_cast<float>(std::log(sum));
    for (int u = 0; u < units; ++u) m(t, u) -= lse;
  }
  return m;
}

// Args: reference tokens, inventory size, optional beam (0 = exact). Four
// frames per reference token, as for a 40 ms frame shift.
void BM_ForceDecode(benchmark::State& state) {
  const int tokens = static_cast<int>(state.range(0));
  const int units = static_cast<int>(state.range(1));
  std::mt19937 rng(1);
  std::vector<UnitId> ref(static_cast<size_t>(tokens));
  for (auto& u : ref) u = std::uniform_int_distribution<int>(1, units - 1)(rng);
  const AlignmentGraph graph = BuildAlignmentGraph(ref, Inventory(units));
  const PosteriorMatrix post = Posteriors(4 * tokens, units, rng);
  DecodeOptions opts;
  if (state.range(2) > 0) opts.beam = static_cast<int>(state.range(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ForceDecode(post, graph, opts));
  }
  state.counters["frames/s"] = benchmark::Counter(
      static_cast<double>(post.num_frames()) * state.iterations(), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ForceDecode)
    ->Args({20, 100, 0})
    ->Args({20, 1000, 0})
    ->Args({50, 5000, 0})
    ->Args({50, 5000, 64})
    ->Unit(benchmark::kMillisecond);

// Peaked posteriors with one shared off-peak score, so every filler unit ties.
void BM_ForceDecodeFlat(benchmark::State& state) {
  const int tokens = static_cast<int>(state.range(0));
  const int units = static_cast<int>(state.range(1));
  std::vector<UnitId> ref;
  for (int i = 0; i < tokens; ++i) ref.push_back(1 + (i * 37) % (units - 1));
  const AlignmentGraph graph = BuildAlignmentGraph(ref, Inventory(units));
  PosteriorMatrix post(4 * tokens, units);
  for (int t = 0; t < post.num_frames(); ++t) {
    for (int u = 0; u < units; ++u) post(t, u) = -20.0f;
    post(t, t % 4 == 3 ? 0 : ref[static_cast<size_t>(t / 4)]) = -0.001f;
  }
  for (auto _ : state) benchmark::DoNotOptimize(ForceDecode(post, graph));
}
BENCHMARK(BM_ForceDecodeFlat)->Args({20, 1000})->Args({50, 5000})->Unit(benchmark::kMillisecond);

void BM_BuildGraph(benchmark::State& state) {
  const UnitInventory inv = Inventory(static_cast<int>(state.range(1)));
  std::vector<UnitId> ref(static_cast<size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(BuildAlignmentGraph(ref, inv));
}
BENCHMARK(BM_BuildGraph)->Args({50, 5000});

}  // namespace
}  // namespace labelcheck
