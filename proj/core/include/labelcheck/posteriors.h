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

#ifndef LABELCHECK_POSTERIORS_H_
#define LABELCHECK_POSTERIORS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace labelcheck {

// Per-frame natural-log scores over units, frame-major.
//
// On-disk layout (all little-endian):
//   "CPST" | u16 version=1 | u16 flags (bit 0: normalized) |
//   u32 num_frames | u32 num_units | f32 values[num_frames * num_units]
class PosteriorMatrix {
 public:
  static constexpr uint16_t kVersion = 1;
  static constexpr uint16_t kFlagNormalized = 1;
  static constexpr size_t kHeaderBytes = 16;
  static constexpr double kValueTolerance = 1e-4;
  static constexpr double kRowSumTolerance = 1e-3;

  PosteriorMatrix() = default;
  PosteriorMatrix(int num_frames, int num_units, bool normalized = true);
  PosteriorMatrix(int num_frames, int num_units, std::vector<float> values,
                  bool normalized = true);

  int num_frames() const { return num_frames_; }
  int num_units() const { return num_units_; }
  bool normalized() const { return normalized_; }
  void set_normalized(bool normalized) { normalized_ = normalized; }

  float operator()(int frame, int unit) const {
    return values_[Offset(frame, unit)];
  }
  float& operator()(int frame, int unit) { return values_[Offset(frame, unit)]; }

  std::span<const float> Row(int frame) const {
    return {values_.data() + Offset(frame, 0), static_cast<size_t>(num_units_)};
  }
  const std::vector<float>& values() const { return values_; }

  // Throws Error(kNotNormalized) if the matrix is flagged normalized but a
  // value exceeds 0 or a row's log-sum-exp leaves [-1e-3, 1e-3].
  void CheckNormalized() const;

  friend bool operator==(const PosteriorMatrix&, const PosteriorMatrix&) = default;

 private:
  size_t Offset(int frame, int unit) const {
    return static_cast<size_t>(frame) * static_cast<size_t>(num_units_) +
           static_cast<size_t>(unit);
  }

  int num_frames_ = 0;
  int num_units_ = 0;
  bool normalized_ = true;
  std::vector<float> values_;
};

PosteriorMatrix ReadPosteriors(std::span<const uint8_t> bytes);
PosteriorMatrix ReadPosteriors(std::string_view bytes);
std::string WritePosteriors(const PosteriorMatrix& matrix);

PosteriorMatrix ReadPosteriorsFile(const std::string& path);
void WritePosteriorsFile(const PosteriorMatrix& matrix, const std::string& path);

double LogSumExp(std::span<const float> row);

}  // namespace labelcheck

#endif  // LABELCHECK_POSTERIORS_H_
