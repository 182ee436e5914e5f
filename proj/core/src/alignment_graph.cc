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

#include "labelcheck/alignment_graph.h"

#include <cmath>
#include <map>
#include <queue>
#include <tuple>

#include <fmt/format.h>

#include "labelcheck/error.h"

namespace labelcheck {

void AlignConfig::Validate() const {
  auto ok = [](double p) { return std::isfinite(p) && p >= 0.0; };
  if (!ok(deletion_penalty) || !ok(insertion_penalty)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("penalties must be finite and >= 0 (p1={}, p2={})",
                            deletion_penalty, insertion_penalty));
  }
}

int CountDeletions(std::span<const EditOp> ops) {
  int n = 0;
  for (const auto& op : ops) n += op.type == EditType::kDelete;
  return n;
}

int CountInsertedUnits(std::span<const EditOp> ops) {
  int n = 0;
  for (const auto& op : ops) {
    if (op.type == EditType::kInsert) n += static_cast<int>(op.units.size());
  }
  return n;
}

double StructuralCost(std::span<const EditOp> ops, const AlignConfig& config) {
  return CountDeletions(ops) * config.deletion_penalty +
         CountInsertedUnits(ops) * config.insertion_penalty;
}

std::string FormatOps(std::span<const EditOp> ops,
                      const UnitInventory& inventory) {
  std::string out;
  for (const auto& op : ops) {
    if (!out.empty()) out += ' ';
    switch (op.type) {
      case EditType::kMatch: out += "MATCH"; break;
      case EditType::kDelete: out += "DEL"; break;
      case EditType::kInsert:
        out += "INS(" + JoinSymbols(op.units, inventory, ",") + ")";
        break;
    }
  }
  return out;
}

std::span<const Arc> AlignmentGraph::ArcsFrom(int state) const {
  if (state < 0 || state >= num_states()) return {};
  return std::span<const Arc>(arcs_).subspan(
      offsets_[static_cast<size_t>(state)],
      offsets_[static_cast<size_t>(state) + 1] - offsets_[static_cast<size_t>(state)]);
}

AlignmentGraph BuildAlignmentGraph(const std::vector<UnitId>& ref,
                                   const UnitInventory& inventory,
                                   const AlignConfig& config) {
  config.Validate();
  for (UnitId id : ref) {
    if (id == kBlankId) {
      throw Error(ErrorCode::kBlankInReference, "reference contains <blk>");
    }
    if (!inventory.Contains(id)) {
      throw Error(ErrorCode::kUnknownUnit, "unit id " + std::to_string(id));
    }
  }

  AlignmentGraph g;
  g.reference_ = ref;
  g.config_ = config;
  g.num_units_ = inventory.size();

  const int n = static_cast<int>(ref.size());
  const int filler = n + 1;
  g.arcs_.reserve(static_cast<size_t>(4 * n + 2 + inventory.size() - 1));
  g.offsets_.reserve(static_cast<size_t>(n + 3));
  for (int i = 0; i <= n; ++i) {
    g.offsets_.push_back(g.arcs_.size());
    if (i < n) {
      g.arcs_.push_back({i, i + 1, ArcKind::kToken, ref[static_cast<size_t>(i)], 0.0});
      g.arcs_.push_back({i, i + 1, ArcKind::kDelete, kNoUnit, config.deletion_penalty});
    }
    g.arcs_.push_back({i, filler, ArcKind::kInsStart, kNoUnit, 0.0});
  }
  g.offsets_.push_back(g.arcs_.size());
  for (int i = 0; i <= n; ++i) {
    g.arcs_.push_back({filler, i, ArcKind::kInsEnd, kNoUnit, 0.0});
  }
  for (UnitId u = 1; u < inventory.size(); ++u) {
    g.arcs_.push_back({filler, filler, ArcKind::kFiller, u, config.insertion_penalty});
  }
  g.offsets_.push_back(g.arcs_.size());
  return g;
}

std::string AlignmentGraph::ToText(const UnitInventory& inventory) const {
  std::string out;
  for (const Arc& arc : arcs_) {
    std::string_view label;
    switch (arc.kind) {
      case ArcKind::kToken:
      case ArcKind::kFiller: label = inventory.Symbol(arc.unit); break;
      case ArcKind::kDelete: label = kDelTag; break;
      case ArcKind::kInsStart: label = kInsStartTag; break;
      case ArcKind::kInsEnd: label = kInsEndTag; break;
    }
    fmt::format_to(std::back_inserter(out), "{} {} {} {}\n", arc.src, arc.dst,
                   label, arc.cost);
  }
  return out;
}

namespace {

// Search node of the enumeration: graph state, return position of an open
// filler visit (-1 if none), whether the open visit has emitted, and the
// label sequence so far.
struct EnumKey {
  int state;
  int ret;
  bool visited;
  std::vector<UnitId> seq;

  auto Tie() const { return std::tie(state, ret, visited, seq); }
  bool operator<(const EnumKey& o) const { return Tie() < o.Tie(); }
};

struct EnumValue {
  double cost;
  int structural;
  std::vector<EditOp> ops;
  bool settled = false;
};

bool Better(double c1, int s1, double c2, int s2) {
  return c1 < c2 || (c1 == c2 && s1 < s2);
}

}  // namespace

std::vector<LabelPath> EnumerateLabelPaths(const AlignmentGraph& graph,
                                           int max_emitted, size_t cap) {
  if (max_emitted < 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_emitted must be >= 0");
  }
  std::map<EnumKey, EnumValue> best;
  using Item = std::tuple<double, int, EnumKey>;
  auto cmp = [](const Item& a, const Item& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
    return std::get<2>(b) < std::get<2>(a);
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> queue(cmp);

  auto relax = [&](EnumKey key, double cost, int structural,
                   std::vector<EditOp> ops) {
    auto it = best.find(key);
    if (it != best.end()) {
      if (it->second.settled ||
          !Better(cost, structural, it->second.cost, it->second.structural)) {
        return;
      }
      it->second = {cost, structural, std::move(ops)};
    } else {
      if (best.size() >= cap) {
        throw Error(ErrorCode::kExplosionGuard,
                    "label path enumeration exceeded " + std::to_string(cap) +
                        " search states");
      }
      best.emplace(key, EnumValue{cost, structural, std::move(ops)});
    }
    queue.emplace(cost, structural, std::move(key));
  };

  relax({graph.start_state(), -1, false, {}}, 0.0, 0, {});
  std::map<std::vector<UnitId>, LabelPath> accepted;

  while (!queue.empty()) {
    auto [cost, structural, key] = queue.top();
    queue.pop();
    auto& entry = best.at(key);
    if (entry.settled || entry.cost != cost || entry.structural != structural) {
      continue;
    }
    entry.settled = true;
    const std::vector<EditOp> ops = entry.ops;

    if (key.state == graph.final_state() && key.ret < 0) {
      accepted.emplace(key.seq, LabelPath{key.seq, cost, structural, ops});
    }

    for (const Arc& arc : graph.ArcsFrom(key.state)) {
      EnumKey next = key;
      next.state = arc.dst;
      std::vector<EditOp> next_ops = ops;
      const bool structural_arc = arc.kind != ArcKind::kToken;
      switch (arc.kind) {
        case ArcKind::kToken:
          if (static_cast<int>(key.seq.size()) >= max_emitted) continue;
          next.seq.push_back(arc.unit);
          next_ops.push_back({EditType::kMatch, arc.src, {arc.unit}});
          break;
        case ArcKind::kDelete:
          next_ops.push_back({EditType::kDelete, arc.src,
                              {graph.reference()[static_cast<size_t>(arc.src)]}});
          break;
        case ArcKind::kInsStart:
          next.ret = arc.src;
          next.visited = false;
          next_ops.push_back({EditType::kInsert, arc.src, {}});
          break;
        case ArcKind::kInsEnd:
          if (arc.dst != key.ret || !key.visited) continue;
          next.ret = -1;
          next.visited = false;
          break;
        case ArcKind::kFiller:
          if (static_cast<int>(key.seq.size()) >= max_emitted) continue;
          next.seq.push_back(arc.unit);
          next.visited = true;
          next_ops.back().units.push_back(arc.unit);
          break;
      }
      relax(std::move(next), cost + arc.cost, structural + (structural_arc ? 1 : 0),
            std::move(next_ops));
    }
  }

  std::vector<LabelPath> out;
  out.reserve(accepted.size());
  for (auto& [seq, path] : accepted) out.push_back(std::move(path));
  return out;
}

}  // namespace labelcheck
