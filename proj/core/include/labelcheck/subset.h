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

#ifndef LABELCHECK_SUBSET_H_
#define LABELCHECK_SUBSET_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "labelcheck/corpus_metadata.h"

namespace labelcheck {

enum class TrainingSubset { kS, kM, kL };

inline constexpr double kSubsetSHours = 100.0;
inline constexpr double kSubsetMHours = 1000.0;

std::string_view TrainingSubsetName(TrainingSubset which);
std::optional<TrainingSubset> ParseTrainingSubset(std::string_view name);

// Samples segment ids for a training subset. S and M draw from segments of
// confidence exactly 1.0: the pool is sorted by sid, shuffled with a
// seeded Mersenne Twister, and taken greedily until the running duration
// first reaches target_hours. L ignores the target and returns every strong
// label id in pool order. Throws Error(kInsufficientPool) if the S/M pool
// holds less than target_hours.
std::vector<std::string> SelectTrainingSubset(std::span<const SegmentRecord> segments,
                                              double target_hours,
                                              TrainingSubset which, uint64_t seed);

}  // namespace labelcheck

#endif  // LABELCHECK_SUBSET_H_
