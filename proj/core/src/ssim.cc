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

#include <vector>

#include "labelcheck/error.h"
#include "labelcheck/subtitle_boundary.h"

namespace labelcheck {

namespace {

// Summed-area table with a zero first row and column.
class Integral {
 public:
  Integral(int w, int h) : w_(w + 1), sums_(static_cast<size_t>(w + 1) * (h + 1), 0.0) {}

  double& at(int x, int y) { return sums_[static_cast<size_t>(y) * w_ + x]; }
  double at(int x, int y) const { return sums_[static_cast<size_t>(y) * w_ + x]; }

  template <typename F>
  void Fill(int w, int h, F value) {
    for (int y = 0; y < h; ++y) {
      double row = 0.0;
      for (int x = 0; x < w; ++x) {
        row += value(x, y);
        at(x + 1, y + 1) = at(x + 1, y) + row;
      }
    }
  }

  double Window(int x, int y, int size) const {
    return at(x + size, y + size) - at(x, y + size) - at(x + size, y) + at(x, y);
  }

 private:
  int w_;
  std::vector<double> sums_;
};

}  // namespace

double Ssim(const FrameRegion& a, const FrameRegion& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorCode::kDimensionMismatch, "regions differ in size");
  }
  if (a.width < kSsimWindow || a.height < kSsimWindow) {
    throw Error(ErrorCode::kRegionTooSmall, "regions must be at least 8x8");
  }
  const int w = a.width;
  const int h = a.height;
  Integral sx(w, h), sy(w, h), sxx(w, h), syy(w, h), sxy(w, h);
  sx.Fill(w, h, [&](int x, int y) { return static_cast<double>(a.at(x, y)); });
  sy.Fill(w, h, [&](int x, int y) { return static_cast<double>(b.at(x, y)); });
  sxx.Fill(w, h, [&](int x, int y) {
    const double v = a.at(x, y);
    return v * v;
  });
  syy.Fill(w, h, [&](int x, int y) {
    const double v = b.at(x, y);
    return v * v;
  });
  sxy.Fill(w, h, [&](int x, int y) {
    return static_cast<double>(a.at(x, y)) * static_cast<double>(b.at(x, y));
  });

  constexpr double kN = kSsimWindow * kSsimWindow;
  double total = 0.0;
  for (int y = 0; y + kSsimWindow <= h; ++y) {
    for (int x = 0; x + kSsimWindow <= w; ++x) {
      const double mx = sx.Window(x, y, kSsimWindow) / kN;
      const double my = sy.Window(x, y, kSsimWindow) / kN;
      const double vx = sxx.Window(x, y, kSsimWindow) / kN - mx * mx;
      const double vy = syy.Window(x, y, kSsimWindow) / kN - my * my;
      const double cxy = sxy.Window(x, y, kSsimWindow) / kN - mx * my;
      total += ((2 * mx * my + kSsimC1) * (2 * cxy + kSsimC2)) /
               ((mx * mx + my * my + kSsimC1) * (vx + vy + kSsimC2));
    }
  }
  const double windows = static_cast<double>(w - kSsimWindow + 1) * (h - kSsimWindow + 1);
  return total / windows;
}

}  // namespace labelcheck
