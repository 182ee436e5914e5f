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


#include "labelcheck/units.h"

#include <sstream>

#include <gtest/gtest.h>

#include "labelcheck/error.h"
#include "labelcheck/utf8.h"

namespace labelcheck {
namespace {

UnitInventory MandarinInventory() {
  return UnitInventory({"<blk>", "不", "忘", "初", "心", "o", "k", "了"});
}

TEST(UnitInventoryTest, LooksUpSymbols) {
  const UnitInventory inv = MandarinInventory();
  EXPECT_EQ(inv.size(), 8);
  EXPECT_EQ(inv.Symbol(kBlankId), "<blk>");
  EXPECT_EQ(inv.Find("忘"), 2);
  EXPECT_FALSE(inv.Find("x").has_value());
  EXPECT_TRUE(inv.Contains(7));
  EXPECT_FALSE(inv.Contains(8));
  EXPECT_FALSE(inv.Contains(-1));
}

TEST(UnitInventoryTest, RejectsMalformedInventories) {
  auto expect_bad = [](std::vector<std::string> symbols) {
    try {
      UnitInventory inv(std::move(symbols));
      FAIL() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadInventory);
    }
  };
  expect_bad({});
  expect_bad({"a", "<blk>"});
  expect_bad({"<blk>", "a", "a"});
  expect_bad({"<blk>", ""});
  expect_bad({"<blk>", "<del>"});
  expect_bad({"<blk>", "<gbg>"});
}

TEST(UnitInventoryTest, ParsesOneSymbolPerLine) {
  std::istringstream in("<blk>\r\n不\n忘\n");
  const UnitInventory inv = UnitInventory::Parse(in);
  EXPECT_EQ(inv.symbols(), (std::vector<std::string>{"<blk>", "不", "忘"}));
}

TEST(UnitInventoryTest, MissingFileIsReported) {
  try {
    UnitInventory::FromFile("/nonexistent/units.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFileMissing);
  }
}

TEST(TokenizeReferenceTest, SplitsPerCodePoint) {
  const UnitInventory inv = MandarinInventory();
  EXPECT_EQ(TokenizeReference("不忘初心", inv), (std::vector<UnitId>{1, 2, 3, 4}));
  EXPECT_TRUE(TokenizeReference("", inv).empty());
  EXPECT_EQ(TokenizeReference("ok了", inv), (std::vector<UnitId>{5, 6, 7}));
}

TEST(TokenizeReferenceTest, LowercasesAndSkipsSpaces) {
  const UnitInventory inv = MandarinInventory();
  EXPECT_EQ(TokenizeReference(" O K\t了 ", inv), (std::vector<UnitId>{5, 6, 7}));
}

TEST(TokenizeReferenceTest, RejectsUnknownSymbols) {
  const UnitInventory inv = MandarinInventory();
  try {
    TokenizeReference("不忘x", inv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownUnit);
    EXPECT_NE(std::string(e.what()).find('x'), std::string::npos);
  }
}

TEST(TokenizeReferenceTest, JoinIsInverseOnSymbols) {
  const UnitInventory inv = MandarinInventory();
  EXPECT_EQ(JoinSymbols(TokenizeReference("不忘初心", inv), inv, ""), "不忘初心");
  EXPECT_EQ(JoinSymbols({5, 6}, inv), "o k");
}

TEST(Utf8Test, RoundTripsAndRejectsInvalid) {
  const std::string text = "a不😀";
  const auto cps = DecodeUtf8(text);
  ASSERT_EQ(cps.size(), 3u);
  std::string back;
  for (char32_t cp : cps) AppendUtf8(cp, &back);
  EXPECT_EQ(back, text);
  EXPECT_THROW(DecodeUtf8("\xff"), Error);
  EXPECT_THROW(DecodeUtf8("\xe4\xb8"), Error);
  EXPECT_THROW(DecodeUtf8("\xc0\x80"), Error);
  EXPECT_TRUE(IsCjkIdeograph(U'不'));
  EXPECT_FALSE(IsCjkIdeograph(U'a'));
}

}  // namespace
}  // namespace labelcheck
