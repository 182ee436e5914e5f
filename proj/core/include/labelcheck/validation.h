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

#ifndef LABELCHECK_VALIDATION_H_
#define LABELCHECK_VALIDATION_H_

#include <algorithm>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace labelcheck {

// Levenshtein distance with unit insert/delete/substitute costs.
template <typename T>
int EditDistance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<int> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      const int up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

template <typename T>
int EditDistance(const std::vector<T>& a, const std::vector<T>& b) {
  return EditDistance(std::span<const T>(a), std::span<const T>(b));
}

// Label quality of a segment, in [0, 1].
class Confidence {
 public:
  Confidence() = default;
  // Throws Error(kInvalidArgument) outside [0, 1] or for NaN.
  explicit Confidence(double value);

  double value() const { return value_; }
  friend bool operator==(const Confidence&, const Confidence&) = default;

 private:
  double value_ = 1.0;
};

// 1 - EditDistance(ref, hyp) / max(|ref|, |hyp|); 1.0 when both are empty.
template <typename T>
Confidence ComputeConfidence(const std::vector<T>& ref, const std::vector<T>& hyp) {
  const size_t longest = std::max(ref.size(), hyp.size());
  if (longest == 0) return Confidence(1.0);
  return Confidence(1.0 - static_cast<double>(EditDistance(ref, hyp)) /
                              static_cast<double>(longest));
}

enum class PartitionLabel { kStrongLabel, kWeakLabel, kOthers };

inline constexpr double kStrongLabelMin = 0.95;  // [0.95, 1.00]
inline constexpr double kWeakLabelMin = 0.60;    // [0.60, 0.95)
// Confidences are ratios of small integers; this absorbs the rounding of
// 1 - d/m landing a hair under a boundary it equals exactly.
inline constexpr double kBoundaryTolerance = 1e-9;

PartitionLabel Classify(Confidence c);
std::string_view PartitionLabelName(PartitionLabel label);
std::optional<PartitionLabel> ParsePartitionLabel(std::string_view name);

}  // namespace labelcheck

#endif  // LABELCHECK_VALIDATION_H_
