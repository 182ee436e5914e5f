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

#ifndef LABELCHECK_MER_H_
#define LABELCHECK_MER_H_

#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace labelcheck {

enum class MerTokenKind { kCjkChar, kEnWord };

struct MerToken {
  MerTokenKind kind = MerTokenKind::kCjkChar;
  std::string surface;

  friend bool operator==(const MerToken&, const MerToken&) = default;
};

// Mandarin characters are one token each; maximal runs of ASCII letters form
// one lower-cased English word. Everything else (spaces, digits,
// punctuation, other scripts) is dropped and ends the current word.
std::vector<MerToken> MerTokenize(std::string_view text);

struct MerCounts {
  int errors = 0;
  int ref_tokens = 0;
};

MerCounts MerCount(std::string_view ref, std::string_view hyp);

// 100 * errors / reference tokens. Throws Error(kEmptyReference) when the
// reference has no tokens.
double MerScore(std::string_view ref, std::string_view hyp);

// "utt-id<TAB>text" lines; a line without a tab is an utterance with empty
// text. Blank lines are skipped.
std::vector<std::pair<std::string, std::string>> ReadUttTextTsv(std::istream& in);

}  // namespace labelcheck

#endif  // LABELCHECK_MER_H_
