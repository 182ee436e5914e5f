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

#ifndef LABELCHECK_FORCE_DECODER_H_
#define LABELCHECK_FORCE_DECODER_H_

#include <optional>
#include <string>
#include <vector>

#include "labelcheck/alignment_graph.h"
#include "labelcheck/posteriors.h"
#include "labelcheck/units.h"

namespace labelcheck {

// Frames [begin_frame, end_frame) carry one emitted hypothesis token.
struct TokenSpan {
  UnitId unit = kNoUnit;
  int begin_frame = 0;
  int end_frame = 0;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct DecodeResult {
  std::vector<UnitId> hyp;
  std::vector<EditOp> ops;
  std::vector<TokenSpan> token_spans;
  std::vector<UnitId> frame_labels;  // kBlankId for blank frames
  double total_score = 0.0;          // acoustic_cost + structural_cost
  double acoustic_cost = 0.0;
  double structural_cost = 0.0;
  int num_deletions = 0;
  int num_insertions = 0;  // inserted (filler-emitted) units
  int num_structural_arcs = 0;
  // Filled when DecodeOptions::record_cost_table is set: one row per frame,
  // column 0 the best cost over all states, column 1 + i the best cost of
  // states anchored at chain position i.
  std::vector<std::vector<double>> cost_table;
};

struct DecodeOptions {
  // Live product states kept per frame; unset means exact Viterbi.
  std::optional<int> beam;
  bool record_cost_table = false;
};

// Best path through the CTC topology composed on the fly with `graph`:
// blank self-loops, unit self-loops for repeats, a blank required between
// identical consecutive units. <del>, <is> and </is> consume no frames. Costs
// are (min, +) over negated log-posteriors plus arc penalties. Ties go to
// fewer structural arcs, then to the lexicographically smaller hypothesis
// prefix where the paths merge.
//
// Throws Error(kDimensionMismatch) if the matrix width differs from the
// graph's inventory, Error(kInvalidArgument) on NaN scores, Error(kNoPath)
// when every path has infinite cost, and Error(kBeamCollapse) when pruning
// leaves no live state.
DecodeResult ForceDecode(const PosteriorMatrix& posteriors,
                         const AlignmentGraph& graph,
                         const DecodeOptions& options = {});

// Exhaustive oracle: every frame labeling, collapsed and matched against the
// graph's label paths. Guarded to num_frames <= 6, |inventory| <= 4,
// |ref| <= 3 (Error(kExplosionGuard) otherwise).
DecodeResult BruteForceDecode(const PosteriorMatrix& posteriors,
                              const AlignmentGraph& graph, int max_emitted);

struct TokenTime {
  UnitId unit = kNoUnit;
  double begin_ms = 0.0;
  double end_ms = 0.0;

  friend bool operator==(const TokenTime&, const TokenTime&) = default;
};

std::vector<TokenTime> ExtractTimestamps(const DecodeResult& result,
                                         double frame_shift_ms);

// Builds spans from a per-frame labeling under CTC rules; a new token starts
// at a non-blank frame whose label differs from the previous frame's.
std::vector<TokenSpan> SpansFromFrameLabels(const std::vector<UnitId>& labels);

// Acoustic cost of a labeling: sum over frames of -log p(label).
double AcousticCost(const PosteriorMatrix& posteriors,
                    const std::vector<UnitId>& frame_labels);

// Tab-separated dump of DecodeResult::cost_table with a header row.
std::string FormatCostTable(const DecodeResult& result);

}  // namespace labelcheck

#endif  // LABELCHECK_FORCE_DECODER_H_
