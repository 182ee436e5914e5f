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

#include "labelcheck/error.h"
#include "labelcheck/utf8.h"
#include "labelcheck/validation.h"

namespace labelcheck {

std::vector<MerToken> MerTokenize(std::string_view text) {
  std::vector<MerToken> tokens;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) {
      tokens.push_back({MerTokenKind::kEnWord, std::move(word)});
      word.clear();
    }
  };
  for (char32_t cp : DecodeUtf8(text)) {
    if (IsAsciiLetter(cp)) {
      word.push_back(static_cast<char>(cp >= 'A' && cp <= 'Z' ? cp - 'A' + 'a' : cp));
      continue;
    }
    flush();
    if (IsCjkIdeograph(cp)) tokens.push_back({MerTokenKind::kCjkChar, EncodeUtf8(cp)});
  }
  flush();
  return tokens;
}

MerCounts MerCount(std::string_view ref, std::string_view hyp) {
  const auto r = MerTokenize(ref);
  const auto h = MerTokenize(hyp);
  return {EditDistance(r, h), static_cast<int>(r.size())};
}

double MerScore(std::string_view ref, std::string_view hyp) {
  const MerCounts c = MerCount(ref, hyp);
  if (c.ref_tokens == 0) {
    throw Error(ErrorCode::kEmptyReference, "reference has no MER tokens");
  }
  return 100.0 * c.errors / c.ref_tokens;
}

std::vector<std::pair<std::string, std::string>> ReadUttTextTsv(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      rows.emplace_back(line, "");
    } else {
      rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
  }
  return rows;
}

}  // namespace labelcheck
