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
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "labelcheck/error.h"

namespace labelcheck {
namespace {

std::vector<SegmentRecord> HourPool(int n, double confidence = 1.0) {
  std::vector<SegmentRecord> pool;
  for (int k = 0; k < n; ++k) {
    SegmentRecord seg;
    seg.sid = "S" + std::to_string(100 + k);
    seg.end_time_s = 3600.0;
    seg.confidence = Confidence(confidence);
    pool.push_back(seg);
  }
  return pool;
}

TEST(TrainingSubsetTest, DeterministicSelection) {
  EXPECT_EQ(kSubsetSHours, 100.0);
  EXPECT_EQ(kSubsetMHours, 1000.0);
  const auto pool = HourPool(10);
  const auto first = SelectTrainingSubset(pool, 3.0, TrainingSubset::kS, 42);
  EXPECT_EQ(first.size(), 3u);
  EXPECT_EQ(SelectTrainingSubset(pool, 3.0, TrainingSubset::kS, 42), first);
  // Input order does not matter, only the seed.
  auto reversed = pool;
  std::reverse(reversed.begin(), reversed.end());
  EXPECT_EQ(SelectTrainingSubset(reversed, 3.0, TrainingSubset::kS, 42), first);
  std::set<std::vector<std::string>> draws;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    draws.insert(SelectTrainingSubset(pool, 3.0, TrainingSubset::kM, seed));
  }
  EXPECT_GT(draws.size(), 1u);
}

TEST(TrainingSubsetTest, LargeTakesEveryStrongLabel) {
  auto pool = HourPool(3);
  pool[1].confidence = Confidence(0.95);
  pool[2].confidence = Confidence(0.9);
  const std::vector<std::string> expected = {"S100", "S101"};
  EXPECT_EQ(SelectTrainingSubset(pool, 0.0, TrainingSubset::kL, 1), expected);
  EXPECT_EQ(SelectTrainingSubset(pool, 50.0, TrainingSubset::kL, 99), expected);
}

TEST(TrainingSubsetTest, EdgeCases) {
  const auto pool = HourPool(4);
  EXPECT_TRUE(SelectTrainingSubset(pool, 0.0, TrainingSubset::kS, 3).empty());
  try {
    SelectTrainingSubset(pool, 5.0, TrainingSubset::kS, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientPool);
  }
  // Only confidence 1.0 qualifies for S and M.
  EXPECT_THROW(SelectTrainingSubset(HourPool(4, 0.97), 1.0, TrainingSubset::kS, 3), Error);
  EXPECT_EQ(ParseTrainingSubset("M"), TrainingSubset::kM);
  EXPECT_EQ(TrainingSubsetName(TrainingSubset::kL), "L");
  EXPECT_FALSE(ParseTrainingSubset("XL").has_value());
}

TEST(TrainingSubsetTest, SelectionIsDistinctAndMeetsTarget) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SegmentRecord> pool = HourPool(std::uniform_int_distribution<int>(1, 30)(rng));
    double total = 0.0;
    for (auto& seg : pool) {
      seg.end_time_s = std::uniform_int_distribution<int>(60, 7200)(rng);
      total += seg.end_time_s;
    }
    const double target = std::uniform_real_distribution<double>(0.0, total / 3600.0)(rng);
    const auto ids = SelectTrainingSubset(pool, target, TrainingSubset::kS, trial);
    std::set<std::string> unique(ids.begin(), ids.end());
    EXPECT_EQ(unique.size(), ids.size());
    double chosen = 0.0, without_last = 0.0;
    for (size_t k = 0; k < ids.size(); ++k) {
      const auto it = std::find_if(pool.begin(), pool.end(),
                                   [&](const SegmentRecord& s) { return s.sid == ids[k]; });
      ASSERT_NE(it, pool.end());
      chosen += it->duration_s();
      if (k + 1 < ids.size()) without_last += it->duration_s();
    }
    EXPECT_GE(chosen, target * 3600.0);
    if (!ids.empty()) EXPECT_LT(without_last, target * 3600.0);
  }
}

}  // namespace
}  // namespace labelcheck
