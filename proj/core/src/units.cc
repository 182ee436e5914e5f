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

#include <array>
#include <fstream>

#include "labelcheck/error.h"
#include "labelcheck/utf8.h"

namespace labelcheck {

namespace {

constexpr std::array<std::string_view, 4> kStructuralTags = {
    kDelTag, kInsStartTag, kInsEndTag, kFillerTag};

}  // namespace

UnitInventory::UnitInventory(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty() || symbols_[0] != kBlankSymbol) {
    throw Error(ErrorCode::kBadInventory,
                "unit 0 must be the blank symbol <blk>");
  }
  index_.reserve(symbols_.size());
  for (size_t i = 0; i < symbols_.size(); ++i) {
    const std::string& sym = symbols_[i];
    if (sym.empty()) {
      throw Error(ErrorCode::kBadInventory,
                  "empty symbol at unit " + std::to_string(i));
    }
    for (std::string_view tag : kStructuralTags) {
      if (sym == tag) {
        throw Error(ErrorCode::kBadInventory,
                    "structural tag " + sym + " used as a unit");
      }
    }
    if (!index_.emplace(sym, static_cast<UnitId>(i)).second) {
      throw Error(ErrorCode::kBadInventory, "duplicate symbol " + sym);
    }
  }
}

UnitInventory UnitInventory::Parse(std::istream& in) {
  std::vector<std::string> symbols;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    symbols.push_back(line);
  }
  // A single trailing newline is not an extra (empty) unit.
  return UnitInventory(std::move(symbols));
}

UnitInventory UnitInventory::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileMissing, "cannot open " + path);
  return Parse(in);
}

const std::string& UnitInventory::Symbol(UnitId id) const {
  if (!Contains(id)) {
    throw Error(ErrorCode::kUnknownUnit, "unit id " + std::to_string(id));
  }
  return symbols_[static_cast<size_t>(id)];
}

std::optional<UnitId> UnitInventory::Find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<UnitId> TokenizeReference(std::string_view text,
                                      const UnitInventory& inventory) {
  std::vector<UnitId> ids;
  std::string symbol;
  for (char32_t cp : DecodeUtf8(text)) {
    if (IsUnicodeSpace(cp)) continue;
    if (cp >= 'A' && cp <= 'Z') cp = cp - 'A' + 'a';
    symbol.clear();
    AppendUtf8(cp, &symbol);
    auto id = inventory.Find(symbol);
    if (!id || *id == kBlankId) {
      throw Error(ErrorCode::kUnknownUnit, symbol);
    }
    ids.push_back(*id);
  }
  return ids;
}

std::string JoinSymbols(const std::vector<UnitId>& ids,
                        const UnitInventory& inventory,
                        std::string_view separator) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += separator;
    out += inventory.Symbol(ids[i]);
  }
  return out;
}

}  // namespace labelcheck
