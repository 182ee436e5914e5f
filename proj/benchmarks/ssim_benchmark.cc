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


#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "labelcheck/subtitle_boundary.h"

namespace labelcheck {
namespace {

FrameRegion Noise(int w, int h, std::mt19937& rng) {
  std::uniform_real_distribution<float> px(0.0f, 255.0f);
  FrameRegion f(w, h);
  for (float& v : f.pixels) v = px(rng);
  return f;
}

// A typical subtitle crop is a wide, short strip.
void BM_Ssim(benchmark::State& state) {
  std::mt19937 rng(1);
  const int w = static_cast<int>(state.range(0));
  const int h = static_cast<int>(state.range(1));
  const FrameRegion a = Noise(w, h, rng), b = Noise(w, h, rng);
  for (auto _ : state) benchmark::DoNotOptimize(Ssim(a, b));
  state.SetItemsProcessed(state.iterations() * w * h);
}
BENCHMARK(BM_Ssim)->Args({320, 48})->Args({640, 96});

void BM_DetectSpans(benchmark::State& state) {
  std::mt19937 rng(2);
  std::vector<FrameRegion> frames;
  for (int i = 0; i < 100; ++i) frames.push_back(Noise(320, 48, rng));
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(DetectSpans(frames, kDefaultChangeThreshold, workers));
  }
}
BENCHMARK(BM_DetectSpans)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace labelcheck
