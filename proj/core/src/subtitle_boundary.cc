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

#include <algorithm>
#include <atomic>
#include <thread>

#include "labelcheck/error.h"
#include "labelcheck/subtitle_boundary.h"

namespace labelcheck {

std::vector<double> ConsecutiveSsim(std::span<const FrameRegion> frames, int workers) {
  const size_t pairs = frames.size() > 1 ? frames.size() - 1 : 0;
  std::vector<double> sims(pairs);
  const size_t threads = std::min<size_t>(static_cast<size_t>(std::max(workers, 1)), pairs);
  if (threads <= 1) {
    for (size_t i = 0; i < pairs; ++i) sims[i] = Ssim(frames[i], frames[i + 1]);
    return sims;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (size_t k = 0; k < threads; ++k) {
    pool.emplace_back([&, k] {
      (void)k;
      for (size_t i = next++; i < pairs && !failed; i = next++) {
        try {
          sims[i] = Ssim(frames[i], frames[i + 1]);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return sims;
}

std::vector<SubtitleSpan> SpansFromSimilarities(std::span<const double> similarities,
                                                double threshold) {
  std::vector<SubtitleSpan> spans;
  SubtitleSpan current{0, 0};
  for (size_t i = 0; i < similarities.size(); ++i) {
    if (similarities[i] < threshold) {
      current.end_frame = static_cast<int>(i);
      spans.push_back(current);
      current.start_frame = static_cast<int>(i) + 1;
    }
  }
  current.end_frame = static_cast<int>(similarities.size());
  spans.push_back(current);
  return spans;
}

std::vector<SubtitleSpan> DetectSpans(std::span<const FrameRegion> frames,
                                      double threshold, int workers) {
  if (frames.empty()) throw Error(ErrorCode::kInvalidArgument, "no frames");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must lie in (0, 1)");
  }
  const std::vector<double> sims = ConsecutiveSsim(frames, workers);
  return SpansFromSimilarities(sims, threshold);
}

}  // namespace labelcheck
