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

#ifndef LABELCHECK_ALIGNMENT_GRAPH_H_
#define LABELCHECK_ALIGNMENT_GRAPH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "labelcheck/units.h"

namespace labelcheck {

inline constexpr double kDefaultDeletionPenalty = 2.3;
inline constexpr double kDefaultInsertionPenalty = 4.6;

// Penalties are negative-log-domain costs added to the acoustic cost.
struct AlignConfig {
  double deletion_penalty = kDefaultDeletionPenalty;    // p1, per <del> arc
  double insertion_penalty = kDefaultInsertionPenalty;  // p2, per <gbg> loop

  // Throws Error(kInvalidArgument) unless both penalties are finite and >= 0.
  void Validate() const;
};

enum class ArcKind : uint8_t {
  kToken,     // reference token, cost 0
  kDelete,    // <del>, skips one reference token
  kInsStart,  // <is>, chain state -> filler
  kInsEnd,    // </is>, filler -> chain state
  kFiller,    // <gbg> self-loop on the filler state
};

inline constexpr UnitId kNoUnit = -1;

struct Arc {
  int src = 0;
  int dst = 0;
  ArcKind kind = ArcKind::kToken;
  UnitId unit = kNoUnit;  // emitted unit for kToken and kFiller
  double cost = 0.0;

  bool emits() const { return kind == ArcKind::kToken || kind == ArcKind::kFiller; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

enum class EditType : uint8_t { kMatch, kDelete, kInsert };

// One step of the reference-to-hypothesis alignment. For kMatch and kDelete,
// ref_pos indexes the reference token; for kInsert, the units are inserted
// before reference token ref_pos (ref_pos == N means after the last one).
struct EditOp {
  EditType type = EditType::kMatch;
  int ref_pos = 0;
  std::vector<UnitId> units;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

int CountDeletions(std::span<const EditOp> ops);
int CountInsertedUnits(std::span<const EditOp> ops);
// Sum of deletion and insertion penalties implied by ops.
double StructuralCost(std::span<const EditOp> ops, const AlignConfig& config);
std::string FormatOps(std::span<const EditOp> ops, const UnitInventory& inventory);

// Error-tolerant reference graph. Chain states are 0..N (start 0, final N);
// the filler state is numbered N+1. Arcs are grouped by source state.
//
// A filler visit entered through <is> at chain state i leaves through the
// </is> arc back to i and emits at least one unit; consumers of the graph
// (decoder, enumerator) enforce this pairing.
class AlignmentGraph {
 public:
  int num_chain_states() const { return static_cast<int>(reference_.size()) + 1; }
  int num_states() const { return num_chain_states() + 1; }
  int start_state() const { return 0; }
  int final_state() const { return static_cast<int>(reference_.size()); }
  int filler_state() const { return num_chain_states(); }
  bool IsChain(int state) const { return state >= 0 && state < num_chain_states(); }

  int num_units() const { return num_units_; }
  const std::vector<UnitId>& reference() const { return reference_; }
  const AlignConfig& config() const { return config_; }

  const std::vector<Arc>& arcs() const { return arcs_; }
  std::span<const Arc> ArcsFrom(int state) const;

  // "src dst label cost" per arc, one per line, in arc order.
  std::string ToText(const UnitInventory& inventory) const;

 private:
  friend AlignmentGraph BuildAlignmentGraph(const std::vector<UnitId>&,
                                            const UnitInventory&,
                                            const AlignConfig&);

  std::vector<UnitId> reference_;
  AlignConfig config_;
  int num_units_ = 0;
  std::vector<Arc> arcs_;
  std::vector<size_t> offsets_;  // num_states + 1 entries
};

// Throws Error(kBlankInReference) if ref holds the blank and
// Error(kUnknownUnit) for ids outside the inventory.
AlignmentGraph BuildAlignmentGraph(const std::vector<UnitId>& ref,
                                   const UnitInventory& inventory,
                                   const AlignConfig& config = {});

struct LabelPath {
  std::vector<UnitId> units;
  double cost = 0.0;
  int num_structural_arcs = 0;
  std::vector<EditOp> ops;  // one minimal-cost witness
};

inline constexpr size_t kDefaultEnumerationCap = 200000;

// Every distinct label sequence (at most max_emitted units) accepted by the
// graph, each with its minimal structural cost. Walks the graph's arcs
// directly. Throws Error(kExplosionGuard) once more than `cap` search states
// are live. Output is sorted by label sequence.
std::vector<LabelPath> EnumerateLabelPaths(const AlignmentGraph& graph,
                                           int max_emitted,
                                           size_t cap = kDefaultEnumerationCap);

}  // namespace labelcheck

#endif  // LABELCHECK_ALIGNMENT_GRAPH_H_
