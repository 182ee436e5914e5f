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

#include "labelcheck/subset.h"

#include <algorithm>
#include <limits>
#include <random>

#include "labelcheck/error.h"

namespace labelcheck {

namespace {

// Unbiased draw in [0, bound) by rejection; std::uniform_int_distribution
// is not reproducible across standard libraries.
uint64_t Below(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::string_view TrainingSubsetName(TrainingSubset which) {
  switch (which) {
    case TrainingSubset::kS: return "S";
    case TrainingSubset::kM: return "M";
    case TrainingSubset::kL: return "L";
  }
  return "L";
}

std::optional<TrainingSubset> ParseTrainingSubset(std::string_view name) {
  if (name == "S") return TrainingSubset::kS;
  if (name == "M") return TrainingSubset::kM;
  if (name == "L") return TrainingSubset::kL;
  return std::nullopt;
}

std::vector<std::string> SelectTrainingSubset(std::span<const SegmentRecord> segments,
                                              double target_hours,
                                              TrainingSubset which, uint64_t seed) {
  std::vector<const SegmentRecord*> pool;
  for (const SegmentRecord& seg : segments) {
    const bool eligible = which == TrainingSubset::kL
                              ? Classify(seg.confidence) == PartitionLabel::kStrongLabel
                              : seg.confidence.value() == 1.0;
    if (eligible) pool.push_back(&seg);
  }
  std::vector<std::string> ids;
  if (which == TrainingSubset::kL) {
    for (const SegmentRecord* seg : pool) ids.push_back(seg->sid);
    return ids;
  }
  if (!(target_hours >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "target hours must be >= 0");
  }

  std::sort(pool.begin(), pool.end(), [](const SegmentRecord* a, const SegmentRecord* b) {
    return a->sid < b->sid;
  });
  double available_s = 0.0;
  for (const SegmentRecord* seg : pool) available_s += seg->duration_s();
  const double target_s = target_hours * 3600.0;
  if (available_s < target_s) {
    throw Error(ErrorCode::kInsufficientPool,
                "pool has " + std::to_string(available_s / 3600.0) + " h, need " +
                    std::to_string(target_hours) + " h");
  }

  std::mt19937_64 rng(seed);
  for (size_t i = pool.size(); i > 1; --i) {
    std::swap(pool[i - 1], pool[static_cast<size_t>(Below(rng, i))]);
  }
  double accumulated_s = 0.0;
  for (const SegmentRecord* seg : pool) {
    if (accumulated_s >= target_s) break;
    ids.push_back(seg->sid);
    accumulated_s += seg->duration_s();
  }
  return ids;
}

}  // namespace labelcheck
