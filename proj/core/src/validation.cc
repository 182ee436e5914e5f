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

#include "labelcheck/validation.h"

#include <cmath>
#include <string>

#include "labelcheck/error.h"

namespace labelcheck {

Confidence::Confidence(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "confidence " + std::to_string(value) + " outside [0, 1]");
  }
}

PartitionLabel Classify(Confidence c) {
  if (c.value() >= kStrongLabelMin - kBoundaryTolerance) {
    return PartitionLabel::kStrongLabel;
  }
  if (c.value() >= kWeakLabelMin - kBoundaryTolerance) {
    return PartitionLabel::kWeakLabel;
  }
  return PartitionLabel::kOthers;
}

std::string_view PartitionLabelName(PartitionLabel label) {
  switch (label) {
    case PartitionLabel::kStrongLabel: return "STRONG_LABEL";
    case PartitionLabel::kWeakLabel: return "WEAK_LABEL";
    case PartitionLabel::kOthers: return "OTHERS";
  }
  return "OTHERS";
}

std::optional<PartitionLabel> ParsePartitionLabel(std::string_view name) {
  for (auto label : {PartitionLabel::kStrongLabel, PartitionLabel::kWeakLabel,
                     PartitionLabel::kOthers}) {
    if (PartitionLabelName(label) == name) return label;
  }
  return std::nullopt;
}

}  // namespace labelcheck
