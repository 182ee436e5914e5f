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

#include "labelcheck/force_decoder.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <utility>

#include <fmt/format.h>

#include "labelcheck/error.h"

namespace labelcheck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr uint8_t kUnreached = 0xFF;

// Product of the CTC topology and the alignment graph. Chain states carry
// whether the last frame was blank (b = 0) or the token that led into them
// (b = 1); filler states carry the return position i of the open visit and
// the last frame label w (0 = blank).
struct Layout {
  int n = 0;
  int units = 0;
  int filler_base = 0;
  int size = 0;

  Layout(int ref_len, int num_units)
      : n(ref_len),
        units(num_units),
        filler_base(2 * (ref_len + 1)),
        size(2 * (ref_len + 1) + (ref_len + 1) * num_units) {}

  int Chain(int i, int b) const { return 2 * i + b; }
  int Filler(int i, int w) const { return filler_base + i * units + w; }
  bool IsFiller(int s) const { return s >= filler_base; }
  int Position(int s) const {
    return IsFiller(s) ? (s - filler_base) / units : s / 2;
  }
  int FillerUnit(int s) const { return (s - filler_base) % units; }
};

// Hypothesis prefix: the path to `node` in the prefix trie, followed by
// `extra` when it is nonzero. The pending unit keeps the per-unit filler
// emissions from allocating trie nodes.
struct Score {
  double cost = kInf;
  int structural = 0;
  int node = 0;
  UnitId extra = 0;
};

// Deduplicated trie of hypothesis prefixes; node 0 is the empty prefix.
class PrefixTrie {
 public:
  PrefixTrie() : nodes_{{-1, 0, 0}} {}

  int Child(int parent, UnitId unit) {
    const uint64_t key = Key(parent, unit);
    auto [it, inserted] = index_.try_emplace(key, static_cast<int>(nodes_.size()));
    if (inserted) {
      nodes_.push_back({parent, unit, nodes_[static_cast<size_t>(parent)].depth + 1});
    }
    return it->second;
  }

  // Node holding the whole prefix of s.
  int Materialize(const Score& s) { return s.extra > 0 ? Child(s.node, s.extra) : s.node; }

  // Negative, zero or positive as prefix a orders before, equal to or after b.
  int Compare(const Score& a, const Score& b) const {
    Cursor x = Normalize(a), y = Normalize(b);
    if (x == y) return 0;
    int shorter = 0;
    while (Depth(x) > Depth(y)) {
      x = Up(x);
      shorter = 1;
    }
    while (Depth(y) > Depth(x)) {
      y = Up(y);
      shorter = -1;
    }
    if (x == y) return shorter;
    for (;;) {
      const Cursor px = Up(x), py = Up(y);
      if (px == py) return Unit(x) < Unit(y) ? -1 : 1;
      x = px;
      y = py;
    }
  }

 private:
  struct Node {
    int parent;
    UnitId unit;
    int depth;
  };
  using Cursor = std::pair<int, UnitId>;

  static uint64_t Key(int parent, UnitId unit) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(parent)) << 32) |
           static_cast<uint32_t>(unit);
  }
  Cursor Normalize(const Score& s) const {
    if (s.extra > 0) {
      auto it = index_.find(Key(s.node, s.extra));
      if (it != index_.end()) return {it->second, 0};
    }
    return {s.node, s.extra};
  }
  int Depth(const Cursor& c) const {
    return nodes_[static_cast<size_t>(c.first)].depth + (c.second > 0 ? 1 : 0);
  }
  Cursor Up(const Cursor& c) const {
    if (c.second > 0) return {c.first, 0};
    return {nodes_[static_cast<size_t>(c.first)].parent, 0};
  }
  UnitId Unit(const Cursor& c) const {
    return c.second > 0 ? c.second : nodes_[static_cast<size_t>(c.first)].unit;
  }

  std::vector<Node> nodes_;
  std::unordered_map<uint64_t, int> index_;
};

// A route out of a previous-frame state, before the emitting arc.
struct Cand {
  Score score;
  int src = -1;
  UnitId label = 0;    // last frame label of src; 0 never conflicts
  uint8_t route = 0;   // Q pools: 0 = loop inside the visit, 1 = via pool
  bool valid() const { return src >= 0 && score.cost < kInf; }
};

struct FrameTables {
  std::vector<Cand> pool;    // 2 per chain position
  std::vector<Cand> filler;  // 2 per position: best filler states
  std::vector<Cand> loop;    // 2 per position: sources for a filler emission
};

class Decoder {
 public:
  Decoder(const PosteriorMatrix& post, const AlignmentGraph& graph,
          const DecodeOptions& options)
      : post_(post),
        graph_(graph),
        options_(options),
        ref_(graph.reference()),
        layout_(static_cast<int>(graph.reference().size()), graph.num_units()) {
    ExtractCosts();
  }

  DecodeResult Run();

 private:
  struct Top2 {
    Cand first, second;
  };

  void ExtractCosts();
  UnitId LastLabel(int s) const;
  // Arcs taken from previous-frame state src to chain position j, without the
  // arc leaving j.
  void AppendClosure(int src, int j, std::vector<Arc>* arcs) const;

  bool Less(const Score& a, const Score& b) const;
  void Offer(Top2* top, const Cand& c) const;
  static const Cand* Excluding(const Top2& top, UnitId unit);

  struct StepInfo {
    int prev = -1;
    UnitId frame_label = 0;
    std::vector<Arc> arcs;  // forward order, ending with the emitting arc
  };
  StepInfo Step(int frame, int state, bool with_arcs) const;

  // Keeps the best `beam` of the finite states listed in `live`, which is
  // left sorted.
  void Prune(std::vector<Score>* scores, std::vector<uint8_t>* how,
             std::vector<int>* live) const;

  const PosteriorMatrix& post_;
  const AlignmentGraph& graph_;
  const DecodeOptions& options_;
  const std::vector<UnitId>& ref_;
  Layout layout_;

  std::vector<double> del_cost_;      // per chain position
  std::vector<double> ins_start_cost_;
  std::vector<double> ins_end_cost_;
  std::vector<double> loop_cost_;     // per unit, kInf if no loop arc

  PrefixTrie trie_;
  std::vector<std::vector<uint8_t>> how_;  // per frame, per state
  std::vector<FrameTables> tables_;
};

void Decoder::ExtractCosts() {
  const int n = layout_.n;
  del_cost_.assign(static_cast<size_t>(n), kInf);
  ins_start_cost_.assign(static_cast<size_t>(n + 1), kInf);
  ins_end_cost_.assign(static_cast<size_t>(n + 1), kInf);
  loop_cost_.assign(static_cast<size_t>(layout_.units), kInf);
  for (const Arc& arc : graph_.arcs()) {
    switch (arc.kind) {
      case ArcKind::kToken: break;
      case ArcKind::kDelete:
        del_cost_[static_cast<size_t>(arc.src)] =
            std::min(del_cost_[static_cast<size_t>(arc.src)], arc.cost);
        break;
      case ArcKind::kInsStart:
        ins_start_cost_[static_cast<size_t>(arc.src)] =
            std::min(ins_start_cost_[static_cast<size_t>(arc.src)], arc.cost);
        break;
      case ArcKind::kInsEnd:
        ins_end_cost_[static_cast<size_t>(arc.dst)] =
            std::min(ins_end_cost_[static_cast<size_t>(arc.dst)], arc.cost);
        break;
      case ArcKind::kFiller:
        if (arc.unit > kBlankId && arc.unit < layout_.units) {
          loop_cost_[static_cast<size_t>(arc.unit)] =
              std::min(loop_cost_[static_cast<size_t>(arc.unit)], arc.cost);
        }
        break;
    }
  }
}

UnitId Decoder::LastLabel(int s) const {
  if (layout_.IsFiller(s)) return layout_.FillerUnit(s);
  return (s % 2 == 1) ? ref_[static_cast<size_t>(s / 2 - 1)] : 0;
}

void Decoder::AppendClosure(int src, int j, std::vector<Arc>* arcs) const {
  int k = layout_.Position(src);
  const int filler = graph_.filler_state();
  if (layout_.IsFiller(src)) {
    arcs->push_back({filler, k, ArcKind::kInsEnd, kNoUnit,
                     ins_end_cost_[static_cast<size_t>(k)]});
  }
  for (; k < j; ++k) {
    arcs->push_back({k, k + 1, ArcKind::kDelete, kNoUnit,
                     del_cost_[static_cast<size_t>(k)]});
  }
}

bool Decoder::Less(const Score& a, const Score& b) const {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (a.structural != b.structural) return a.structural < b.structural;
  return trie_.Compare(a, b) < 0;
}

void Decoder::Offer(Top2* top, const Cand& c) const {
  if (!c.valid()) return;
  auto better = [&](const Cand& x, const Cand& y) {
    return !y.valid() || Less(x.score, y.score);
  };
  if (better(c, top->first)) {
    if (top->first.valid() && top->first.label != c.label) top->second = top->first;
    top->first = c;
  } else if (c.label != top->first.label && better(c, top->second)) {
    top->second = c;
  }
}

const Cand* Decoder::Excluding(const Top2& top, UnitId unit) {
  if (top.first.valid() && (top.first.label == 0 || top.first.label != unit)) {
    return &top.first;
  }
  if (top.second.valid() && top.second.label != unit) return &top.second;
  return nullptr;
}

Decoder::StepInfo Decoder::Step(int frame, int state, bool with_arcs) const {
  StepInfo info;
  const uint8_t how = how_[static_cast<size_t>(frame)][static_cast<size_t>(state)];
  const FrameTables& tab = tables_[static_cast<size_t>(frame)];
  const int i = layout_.Position(state);
  const int filler = graph_.filler_state();
  if (!layout_.IsFiller(state)) {
    if (state % 2 == 0) {
      info.prev = layout_.Chain(i, how);
      info.frame_label = kBlankId;
      return info;
    }
    const UnitId unit = ref_[static_cast<size_t>(i - 1)];
    info.frame_label = unit;
    if (how == 0) {
      info.prev = state;
      return info;
    }
    const Cand& c = tab.pool[static_cast<size_t>(2 * (i - 1) + (how - 1))];
    info.prev = c.src;
    if (with_arcs) {
      AppendClosure(c.src, i - 1, &info.arcs);
      info.arcs.push_back({i - 1, i, ArcKind::kToken, unit, 0.0});
    }
    return info;
  }
  const UnitId w = layout_.FillerUnit(state);
  if (w == 0) {
    info.prev = tab.filler[static_cast<size_t>(2 * i)].src;
    info.frame_label = kBlankId;
    return info;
  }
  info.frame_label = w;
  if (how == 0) {
    info.prev = state;
    return info;
  }
  const Cand& c = tab.loop[static_cast<size_t>(2 * i + (how - 1))];
  info.prev = c.src;
  if (with_arcs) {
    if (c.route == 1) {
      AppendClosure(c.src, i, &info.arcs);
      info.arcs.push_back({i, filler, ArcKind::kInsStart, kNoUnit,
                           ins_start_cost_[static_cast<size_t>(i)]});
    }
    info.arcs.push_back({filler, filler, ArcKind::kFiller, w,
                         loop_cost_[static_cast<size_t>(w)]});
  }
  return info;
}

void Decoder::Prune(std::vector<Score>* scores, std::vector<uint8_t>* how,
                    std::vector<int>* live) const {
  const int beam = *options_.beam;
  if (static_cast<int>(live->size()) <= beam) {
    std::sort(live->begin(), live->end());
    return;
  }
  auto by_cost = [&](int a, int b) {
    const Score& x = (*scores)[static_cast<size_t>(a)];
    const Score& y = (*scores)[static_cast<size_t>(b)];
    if (x.cost != y.cost) return x.cost < y.cost;
    if (x.structural != y.structural) return x.structural < y.structural;
    return a < b;
  };
  std::nth_element(live->begin(), live->begin() + beam, live->end(), by_cost);
  for (auto it = live->begin() + beam; it != live->end(); ++it) {
    (*scores)[static_cast<size_t>(*it)] = Score{};
    (*how)[static_cast<size_t>(*it)] = kUnreached;
  }
  live->resize(static_cast<size_t>(beam));
  std::sort(live->begin(), live->end());
}

DecodeResult Decoder::Run() {
  const int n = layout_.n;
  const int units = layout_.units;
  const int num_frames = post_.num_frames();

  std::vector<Score> prev(static_cast<size_t>(layout_.size));
  std::vector<Score> next(static_cast<size_t>(layout_.size));
  prev[static_cast<size_t>(layout_.Chain(0, 0))].cost = 0.0;

  how_.assign(static_cast<size_t>(num_frames), {});
  tables_.assign(static_cast<size_t>(num_frames), {});
  DecodeResult result;

  // Routes out of the states in `scores` into chain position j, collected
  // as pools of the two best distinct last labels.
  // With a beam only the states in `live` are finite.
  const bool sparse = options_.beam.has_value();
  std::vector<int> live_prev{layout_.Chain(0, 0)}, live_next;
  auto build_pools = [&](const std::vector<Score>& scores,
                         std::vector<Top2>* filler_top, std::vector<Top2>* pool) {
    filler_top->assign(static_cast<size_t>(n + 1), Top2{});
    pool->assign(static_cast<size_t>(n + 1), Top2{});
    auto offer_filler = [&](int s) {
      Top2& ft = (*filler_top)[static_cast<size_t>(layout_.Position(s))];
      const Score& sc = scores[static_cast<size_t>(s)];
      // Labels are distinct here, so a state worse than the runner-up
      // cannot enter either slot.
      if (ft.second.valid() && sc.cost > ft.second.score.cost) return;
      Offer(&ft, Cand{sc, s, layout_.FillerUnit(s), 0});
    };
    if (sparse) {
      for (int s : live_prev) {
        if (layout_.IsFiller(s)) offer_filler(s);
      }
    } else {
      for (int s = layout_.filler_base; s < layout_.size; ++s) offer_filler(s);
    }
    for (int j = 0; j <= n; ++j) {
      const Top2& ft = (*filler_top)[static_cast<size_t>(j)];
      Top2& p = (*pool)[static_cast<size_t>(j)];
      if (j > 0) {
        for (Cand c : {(*pool)[static_cast<size_t>(j - 1)].first,
                       (*pool)[static_cast<size_t>(j - 1)].second}) {
          if (!c.valid()) continue;
          c.score.cost += del_cost_[static_cast<size_t>(j - 1)];
          c.score.structural += 1;
          Offer(&p, c);
        }
      }
      for (int b = 0; b < (j > 0 ? 2 : 1); ++b) {
        const int s = layout_.Chain(j, b);
        Offer(&p, Cand{scores[static_cast<size_t>(s)], s, LastLabel(s), 0});
      }
      for (Cand c : {ft.first, ft.second}) {
        if (!c.valid()) continue;
        c.score.cost += ins_end_cost_[static_cast<size_t>(j)];
        c.score.structural += 1;
        Offer(&p, c);
      }
    }
  };

  std::vector<Top2> filler_top, pool, loop(static_cast<size_t>(n + 1));
  for (int t = 0; t < num_frames; ++t) {
    const auto row = post_.Row(t);
    auto acoustic = [&](UnitId u) { return -static_cast<double>(row[static_cast<size_t>(u)]); };

    build_pools(prev, &filler_top, &pool);
    for (int j = 0; j <= n; ++j) {
      Top2& q = loop[static_cast<size_t>(j)];
      q = Top2{};
      for (Cand c : {filler_top[static_cast<size_t>(j)].first,
                     filler_top[static_cast<size_t>(j)].second}) {
        if (!c.valid()) continue;
        c.score.structural += 1;
        c.route = 0;
        Offer(&q, c);
      }
      for (Cand c : {pool[static_cast<size_t>(j)].first, pool[static_cast<size_t>(j)].second}) {
        if (!c.valid()) continue;
        c.score.cost += ins_start_cost_[static_cast<size_t>(j)];
        c.score.structural += 2;
        c.route = 1;
        Offer(&q, c);
      }
    }

    FrameTables& tab = tables_[static_cast<size_t>(t)];
    tab.pool.resize(static_cast<size_t>(2 * (n + 1)));
    tab.filler.resize(static_cast<size_t>(2 * (n + 1)));
    tab.loop.resize(static_cast<size_t>(2 * (n + 1)));
    for (int j = 0; j <= n; ++j) {
      tab.pool[static_cast<size_t>(2 * j)] = pool[static_cast<size_t>(j)].first;
      tab.pool[static_cast<size_t>(2 * j + 1)] = pool[static_cast<size_t>(j)].second;
      tab.filler[static_cast<size_t>(2 * j)] = filler_top[static_cast<size_t>(j)].first;
      tab.filler[static_cast<size_t>(2 * j + 1)] = filler_top[static_cast<size_t>(j)].second;
      tab.loop[static_cast<size_t>(2 * j)] = loop[static_cast<size_t>(j)].first;
      tab.loop[static_cast<size_t>(2 * j + 1)] = loop[static_cast<size_t>(j)].second;
    }

    std::vector<uint8_t>& how = how_[static_cast<size_t>(t)];
    how.assign(static_cast<size_t>(layout_.size), kUnreached);
    // The filler loop below writes every unit state it visits; reset the rest.
    std::fill(next.begin(), next.begin() + layout_.filler_base, Score{});
    if (sparse) {
      for (int s : live_next) next[static_cast<size_t>(s)] = Score{};
      live_next.clear();
    }

    // With a beam, a unit state entered from the pool survives only if its
    // emission plus loop cost is among the beam + 3 cheapest: otherwise at
    // least beam + 2 states at the same position are strictly cheaper.
    std::vector<UnitId> entry_units;
    if (sparse) {
      std::vector<std::pair<double, UnitId>> keyed;
      for (UnitId w = 1; w < units; ++w) {
        const double lc = loop_cost_[static_cast<size_t>(w)];
        if (lc < kInf) keyed.emplace_back(lc + acoustic(w), w);
      }
      const size_t keep = static_cast<size_t>(*options_.beam) + 3;
      if (keyed.size() > keep) {
        std::nth_element(keyed.begin(), keyed.begin() + static_cast<long>(keep - 1), keyed.end());
        const double bound = keyed[keep - 1].first;
        for (const auto& [key, w] : keyed) {
          if (key <= bound) entry_units.push_back(w);
        }
      } else {
        for (const auto& kw : keyed) entry_units.push_back(kw.second);
      }
      std::sort(entry_units.begin(), entry_units.end());
    }
    size_t live_cursor = 0;  // into live_prev, advanced by position

    // Keeps the better of (incumbent, candidate) in next[s].
    auto consider = [&](int s, const Score& cand, uint8_t code) {
      Score& cur = next[static_cast<size_t>(s)];
      if (!(cand.cost < kInf)) return;
      if (cur.cost < kInf && !Less(cand, cur)) return;
      cur = cand;
      how[static_cast<size_t>(s)] = code;
    };

    const double blank_cost = acoustic(kBlankId);
    for (int i = 0; i <= n; ++i) {
      // Chain, blank frame.
      for (int b = 0; b < (i > 0 ? 2 : 1); ++b) {
        Score s = prev[static_cast<size_t>(layout_.Chain(i, b))];
        s.cost += blank_cost;
        consider(layout_.Chain(i, 0), s, static_cast<uint8_t>(b));
      }
      // Chain, token frame.
      if (i > 0) {
        const UnitId r = ref_[static_cast<size_t>(i - 1)];
        const double ac = acoustic(r);
        const int self = layout_.Chain(i, 1);
        Score rep = prev[static_cast<size_t>(self)];
        rep.cost += ac;
        consider(self, rep, 0);
        const Top2& p = pool[static_cast<size_t>(i - 1)];
        if (const Cand* c = Excluding(p, r)) {
          const Score s{c->score.cost + ac, c->score.structural,
                        trie_.Materialize(c->score), r};
          consider(self, s, (c == &p.first) ? 1 : 2);
        }
      }
      // Filler.
      const Top2& ft = filler_top[static_cast<size_t>(i)];
      const Top2& q = loop[static_cast<size_t>(i)];
      const int base = layout_.Filler(i, 0);
      next[static_cast<size_t>(base)] = Score{};
      if (!ft.first.valid() && !q.first.valid()) {
        if (!sparse) {
          std::fill(next.begin() + base + 1, next.begin() + layout_.Filler(i + 1, 0), Score{});
        }
        continue;
      }
      if (ft.first.valid()) {
        Score s = ft.first.score;
        s.cost += blank_cost;
        consider(base, s, 0);
      }
      const int q_node[2] = {q.first.valid() ? trie_.Materialize(q.first.score) : 0,
                             q.second.valid() ? trie_.Materialize(q.second.score) : 0};
      auto update_unit = [&](UnitId w) {
        const int self = base + w;
        const double ac = acoustic(w);
        const Score& old = prev[static_cast<size_t>(self)];
        Score best;
        uint8_t code = kUnreached;
        if (old.cost < kInf) {
          best = old;
          best.cost += ac;
          code = 0;
        }
        const Cand* c = nullptr;
        if (q.first.valid() && q.first.label != w) {
          c = &q.first;
        } else if (q.second.valid() && q.second.label != w) {
          c = &q.second;
        }
        if (c != nullptr && loop_cost_[static_cast<size_t>(w)] < kInf) {
          const uint8_t route = (c == &q.first) ? 1 : 2;
          const Score s{c->score.cost + loop_cost_[static_cast<size_t>(w)] + ac,
                        c->score.structural, q_node[route - 1], w};
          if (code == kUnreached || s.cost < best.cost ||
              (s.cost == best.cost && Less(s, best))) {
            best = s;
            code = route;
          }
        }
        if (code != kUnreached && best.cost < kInf) {
          next[static_cast<size_t>(self)] = best;
          how[static_cast<size_t>(self)] = code;
          if (sparse) live_next.push_back(self);
        } else {
          next[static_cast<size_t>(self)] = Score{};
        }
      };
      if (!sparse) {
        for (UnitId w = 1; w < units; ++w) update_unit(w);
        continue;
      }
      // Units live at this position, merged with the entry candidates.
      const int end = layout_.Filler(i + 1, 0);
      while (live_cursor < live_prev.size() && live_prev[live_cursor] < base) ++live_cursor;
      size_t e = 0;
      while (live_cursor < live_prev.size() && live_prev[live_cursor] < end) {
        const UnitId w = layout_.FillerUnit(live_prev[live_cursor++]);
        if (w == 0) continue;
        while (e < entry_units.size() && entry_units[e] < w) update_unit(entry_units[e++]);
        if (e < entry_units.size() && entry_units[e] == w) ++e;
        update_unit(w);
      }
      if (q.first.valid()) {
        while (e < entry_units.size()) update_unit(entry_units[e++]);
      }
    }

    bool any = false;
    if (sparse) {
      for (int s = 0; s < layout_.filler_base; ++s) {
        if (next[static_cast<size_t>(s)].cost < kInf) live_next.push_back(s);
      }
      for (int i = 0; i <= n; ++i) {
        const int s = layout_.Filler(i, 0);
        if (next[static_cast<size_t>(s)].cost < kInf) live_next.push_back(s);
      }
      Prune(&next, &how, &live_next);
      any = !live_next.empty();
      std::swap(live_prev, live_next);
    } else {
      for (const Score& sc : next) {
        if (sc.cost < kInf) {
          any = true;
          break;
        }
      }
    }
    if (!any) {
      if (options_.beam) {
        throw Error(ErrorCode::kBeamCollapse,
                    "beam pruned every state at frame " + std::to_string(t));
      }
      throw Error(ErrorCode::kNoPath,
                  "no finite-cost path through frame " + std::to_string(t));
    }

    if (options_.record_cost_table) {
      std::vector<double> row_costs(static_cast<size_t>(n + 2), kInf);
      for (int s = 0; s < layout_.size; ++s) {
        const double c = next[static_cast<size_t>(s)].cost;
        row_costs[0] = std::min(row_costs[0], c);
        auto& slot = row_costs[static_cast<size_t>(1 + layout_.Position(s))];
        slot = std::min(slot, c);
      }
      result.cost_table.push_back(std::move(row_costs));
    }
    std::swap(prev, next);
  }

  // Close into the final chain state after the last frame.
  std::vector<Top2> end_filler, end_pool;
  build_pools(prev, &end_filler, &end_pool);
  const Cand& end = end_pool[static_cast<size_t>(n)].first;
  if (!end.valid()) {
    throw Error(options_.beam ? ErrorCode::kBeamCollapse : ErrorCode::kNoPath,
                "final state unreachable");
  }

  // Backtrace.
  std::vector<Arc> tail;
  AppendClosure(end.src, n, &tail);
  std::vector<std::vector<Arc>> arcs_before(static_cast<size_t>(num_frames));
  result.frame_labels.assign(static_cast<size_t>(num_frames), kBlankId);
  int state = end.src;
  for (int t = num_frames - 1; t >= 0; --t) {
    StepInfo info = Step(t, state, /*with_arcs=*/true);
    result.frame_labels[static_cast<size_t>(t)] = info.frame_label;
    arcs_before[static_cast<size_t>(t)] = std::move(info.arcs);
    state = info.prev;
  }

  auto apply = [&](const Arc& arc) {
    if (arc.kind != ArcKind::kToken) {
      ++result.num_structural_arcs;
      result.structural_cost += arc.cost;
    }
    switch (arc.kind) {
      case ArcKind::kToken:
        result.hyp.push_back(arc.unit);
        result.ops.push_back({EditType::kMatch, arc.src, {arc.unit}});
        break;
      case ArcKind::kDelete:
        ++result.num_deletions;
        result.ops.push_back(
            {EditType::kDelete, arc.src, {ref_[static_cast<size_t>(arc.src)]}});
        break;
      case ArcKind::kInsStart:
        result.ops.push_back({EditType::kInsert, arc.src, {}});
        break;
      case ArcKind::kFiller:
        ++result.num_insertions;
        result.hyp.push_back(arc.unit);
        result.ops.back().units.push_back(arc.unit);
        break;
      case ArcKind::kInsEnd:
        break;
    }
  };
  for (const auto& arcs : arcs_before) {
    for (const Arc& arc : arcs) apply(arc);
  }
  for (const Arc& arc : tail) apply(arc);

  result.token_spans = SpansFromFrameLabels(result.frame_labels);
  result.total_score = end.score.cost;
  result.acoustic_cost = AcousticCost(post_, result.frame_labels);
  return result;
}

}  // namespace

DecodeResult ForceDecode(const PosteriorMatrix& posteriors,
                         const AlignmentGraph& graph,
                         const DecodeOptions& options) {
  if (posteriors.num_units() != graph.num_units()) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("posteriors have {} units, graph inventory has {}",
                            posteriors.num_units(), graph.num_units()));
  }
  if (options.beam && *options.beam < 1) {
    throw Error(ErrorCode::kInvalidArgument, "beam must be >= 1");
  }
  for (float v : posteriors.values()) {
    if (std::isnan(v) || v == std::numeric_limits<float>::infinity()) {
      throw Error(ErrorCode::kInvalidArgument, "posterior scores contain NaN or +inf");
    }
  }
  Decoder decoder(posteriors, graph, options);
  return decoder.Run();
}

std::vector<TokenSpan> SpansFromFrameLabels(const std::vector<UnitId>& labels) {
  std::vector<TokenSpan> spans;
  UnitId last = kBlankId;
  for (size_t t = 0; t < labels.size(); ++t) {
    const UnitId u = labels[t];
    if (u != kBlankId) {
      if (u != last) {
        spans.push_back({u, static_cast<int>(t), static_cast<int>(t) + 1});
      } else {
        spans.back().end_frame = static_cast<int>(t) + 1;
      }
    }
    last = u;
  }
  return spans;
}

double AcousticCost(const PosteriorMatrix& posteriors,
                    const std::vector<UnitId>& frame_labels) {
  double cost = 0.0;
  for (size_t t = 0; t < frame_labels.size(); ++t) {
    cost -= static_cast<double>(posteriors(static_cast<int>(t), frame_labels[t]));
  }
  return cost;
}

std::vector<TokenTime> ExtractTimestamps(const DecodeResult& result,
                                         double frame_shift_ms) {
  std::vector<TokenTime> times;
  times.reserve(result.token_spans.size());
  for (const TokenSpan& span : result.token_spans) {
    times.push_back({span.unit, span.begin_frame * frame_shift_ms,
                     span.end_frame * frame_shift_ms});
  }
  return times;
}

std::string FormatCostTable(const DecodeResult& result) {
  std::string out = "frame\tbest";
  const size_t cols = result.cost_table.empty() ? 0 : result.cost_table[0].size();
  for (size_t i = 1; i < cols; ++i) fmt::format_to(std::back_inserter(out), "\tpos{}", i - 1);
  out += '\n';
  for (size_t t = 0; t < result.cost_table.size(); ++t) {
    fmt::format_to(std::back_inserter(out), "{}", t);
    for (double c : result.cost_table[t]) fmt::format_to(std::back_inserter(out), "\t{:.6f}", c);
    out += '\n';
  }
  return out;
}

}  // namespace labelcheck
