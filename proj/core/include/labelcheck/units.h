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

#ifndef LABELCHECK_UNITS_H_
#define LABELCHECK_UNITS_H_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace labelcheck {

using UnitId = int;

inline constexpr UnitId kBlankId = 0;
inline constexpr std::string_view kBlankSymbol = "<blk>";

// Tags used by the alignment graph; never valid inventory symbols.
inline constexpr std::string_view kDelTag = "<del>";
inline constexpr std::string_view kInsStartTag = "<is>";
inline constexpr std::string_view kInsEndTag = "</is>";
inline constexpr std::string_view kFillerTag = "<gbg>";

// The CTC modeling-unit alphabet. Unit 0 is always the blank.
class UnitInventory {
 public:
  // Throws Error(kBadInventory) if symbols[0] is not "<blk>", a symbol is
  // empty, repeated, or equal to a structural tag.
  explicit UnitInventory(std::vector<std::string> symbols);

  // One symbol per line, line number = unit id. Trailing '\r' is stripped.
  static UnitInventory Parse(std::istream& in);
  static UnitInventory FromFile(const std::string& path);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& Symbol(UnitId id) const;
  std::optional<UnitId> Find(std::string_view symbol) const;
  bool Contains(UnitId id) const { return id >= 0 && id < size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, UnitId> index_;
};

// Splits normalized reference text into unit ids. Every non-space code point
// is one unit; ASCII letters are lower-cased before lookup. Throws
// Error(kUnknownUnit) naming the first symbol missing from the inventory.
std::vector<UnitId> TokenizeReference(std::string_view text,
                                      const UnitInventory& inventory);

std::string JoinSymbols(const std::vector<UnitId>& ids,
                        const UnitInventory& inventory,
                        std::string_view separator = " ");

}  // namespace labelcheck

#endif  // LABELCHECK_UNITS_H_
