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

#ifndef LABELCHECK_UTF8_H_
#define LABELCHECK_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace labelcheck {

// Decodes UTF-8 into code points. Throws Error(kInvalidArgument) on
// malformed input (overlong forms, surrogates and truncated sequences
// included).
std::vector<char32_t> DecodeUtf8(std::string_view text);

void AppendUtf8(char32_t cp, std::string* out);
std::string EncodeUtf8(char32_t cp);

bool IsCjkIdeograph(char32_t cp);
bool IsAsciiLetter(char32_t cp);
bool IsUnicodeSpace(char32_t cp);

}  // namespace labelcheck

#endif  // LABELCHECK_UTF8_H_
