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

#ifndef LABELCHECK_SUBTITLE_BOUNDARY_H_
#define LABELCHECK_SUBTITLE_BOUNDARY_H_

#include <span>
#include <vector>

namespace labelcheck {

// Grayscale crop of the subtitle area, row-major intensities in [0, 255].
struct FrameRegion {
  int width = 0;
  int height = 0;
  std::vector<float> pixels;

  FrameRegion() = default;
  FrameRegion(int w, int h, float fill = 0.0f)
      : width(w), height(h), pixels(static_cast<size_t>(w) * static_cast<size_t>(h), fill) {}

  float at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  float& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
};

inline constexpr int kSsimWindow = 8;
inline constexpr double kSsimC1 = (0.01 * 255) * (0.01 * 255);
inline constexpr double kSsimC2 = (0.03 * 255) * (0.03 * 255);

// Mean SSIM over all 8x8 windows at stride 1 with uniform weights and
// population statistics. Throws Error(kDimensionMismatch) for unequal sizes
// and Error(kRegionTooSmall) below 8x8.
double Ssim(const FrameRegion& a, const FrameRegion& b);

struct SubtitleSpan {
  int start_frame = 0;
  int end_frame = 0;  // inclusive

  friend bool operator==(const SubtitleSpan&, const SubtitleSpan&) = default;
};

inline constexpr double kDefaultChangeThreshold = 0.8;

// SSIM of each consecutive pair (i, i + 1), scored on up to `workers`
// threads; result order follows the frames.
std::vector<double> ConsecutiveSsim(std::span<const FrameRegion> frames, int workers = 1);

// Splits the frame range wherever consecutive SSIM drops below threshold:
// the earlier frame closes the running span and the later one opens the
// next. Throws Error(kInvalidArgument) for an empty input or a threshold
// outside (0, 1).
std::vector<SubtitleSpan> DetectSpans(std::span<const FrameRegion> frames,
                                      double threshold = kDefaultChangeThreshold,
                                      int workers = 1);

std::vector<SubtitleSpan> SpansFromSimilarities(std::span<const double> similarities,
                                                double threshold);

}  // namespace labelcheck

#endif  // LABELCHECK_SUBTITLE_BOUNDARY_H_
