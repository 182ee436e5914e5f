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


#include "labelcheck/mer.h"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "labelcheck/error.h"
#include "test_util.h"

namespace labelcheck {
namespace {

std::vector<std::string> Surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : MerTokenize(text)) out.push_back(t.surface);
  return out;
}

TEST(MerTokenizeTest, Examples) {
  EXPECT_EQ(Surfaces("我们ok了"), (std::vector<std::string>{"我", "们", "ok", "了"}));
  EXPECT_EQ(Surfaces("hello world"), (std::vector<std::string>{"hello", "world"}));
  EXPECT_TRUE(MerTokenize("").empty());
}

TEST(MerTokenizeTest, KindsAndSeparators) {
  const auto tokens = MerTokenize("Hi,世界 2024 GO!go");
  ASSERT_EQ(tokens.size(), 5u);
  EXPECT_EQ(tokens[0], (MerToken{MerTokenKind::kEnWord, "hi"}));
  EXPECT_EQ(tokens[1], (MerToken{MerTokenKind::kCjkChar, "世"}));
  EXPECT_EQ(tokens[2], (MerToken{MerTokenKind::kCjkChar, "界"}));
  EXPECT_EQ(tokens[3], (MerToken{MerTokenKind::kEnWord, "go"}));
  EXPECT_EQ(tokens[4], (MerToken{MerTokenKind::kEnWord, "go"}));
  EXPECT_EQ(Surfaces("ok123go，。"), (std::vector<std::string>{"ok", "go"}));
}

TEST(MerScoreTest, Examples) {
  EXPECT_EQ(MerScore("我们ok了", "我们ok了"), 0.0);
  // 10 tokens; hyp substitutes one and drops another.
  const std::string ref = "今天我们去 park 散步吧好";
  ASSERT_EQ(MerTokenize(ref).size(), 10u);
  const std::string hyp = "今天他们去 park 散步好";
  EXPECT_EQ(testing::NaiveEditDistance(Surfaces(ref), Surfaces(hyp)), 2);
  EXPECT_DOUBLE_EQ(MerScore(ref, hyp), 20.0);
  EXPECT_DOUBLE_EQ(MerScore("不忘初心", ""), 100.0);
}

TEST(MerScoreTest, InsertionsCanExceedOneHundred) {
  EXPECT_DOUBLE_EQ(MerScore("我", "我们你他"), 300.0);
}

TEST(MerScoreTest, EmptyReferenceIsAnError) {
  try {
    MerScore("，。", "我");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyReference);
  }
  const MerCounts c = MerCount("", "我");
  EXPECT_EQ(c.errors, 1);
  EXPECT_EQ(c.ref_tokens, 0);
}

TEST(MerScoreTest, CaseInsensitiveWords) {
  EXPECT_EQ(MerScore("Hello World", "hello WORLD"), 0.0);
}

TEST(MerScoreTest, RandomMixedTextMatchesNaiveOracle) {
  const std::vector<std::string> vocab = {"我", "你", "ok", "go", "了"};
  std::mt19937 rng(21);
  auto make = [&](std::vector<std::string>* tokens) {
    std::string text;
    const int n = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int i = 0; i < n; ++i) {
      tokens->push_back(vocab[std::uniform_int_distribution<size_t>(0, vocab.size() - 1)(rng)]);
      text += tokens->back() + " ";
    }
    return text;
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> rt, ht;
    const std::string r = make(&rt), h = make(&ht);
    const MerCounts c = MerCount(r, h);
    EXPECT_EQ(c.errors, testing::NaiveEditDistance(rt, ht));
    EXPECT_EQ(c.ref_tokens, static_cast<int>(rt.size()));
  }
}

TEST(UttTextTsvTest, ParsesRows) {
  std::istringstream in("u1\t我们 ok\r\n\nu2\t\nu3\n");
  const auto rows = ReadUttTextTsv(in);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::pair<std::string, std::string>{"u1", "我们 ok"}));
  EXPECT_EQ(rows[1].second, "");
  EXPECT_EQ(rows[2].first, "u3");
}

}  // namespace
}  // namespace labelcheck
