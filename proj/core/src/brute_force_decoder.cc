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

#include <cmath>
#include <limits>
#include <map>

#include "labelcheck/error.h"
#include "labelcheck/force_decoder.h"

namespace labelcheck {

namespace {

constexpr int kMaxFrames = 6;
constexpr int kMaxUnits = 4;
constexpr size_t kMaxReference = 3;

std::vector<UnitId> Collapse(const std::vector<UnitId>& labels) {
  std::vector<UnitId> out;
  UnitId last = kBlankId;
  for (UnitId u : labels) {
    if (u != kBlankId && u != last) out.push_back(u);
    last = u;
  }
  return out;
}

}  // namespace

DecodeResult BruteForceDecode(const PosteriorMatrix& posteriors,
                              const AlignmentGraph& graph, int max_emitted) {
  if (posteriors.num_units() != graph.num_units()) {
    throw Error(ErrorCode::kDimensionMismatch, "posterior width != inventory size");
  }
  if (posteriors.num_frames() > kMaxFrames || graph.num_units() > kMaxUnits ||
      graph.reference().size() > kMaxReference) {
    throw Error(ErrorCode::kExplosionGuard,
                "brute force is limited to 6 frames, 4 units and 3 reference tokens");
  }

  std::map<std::vector<UnitId>, LabelPath> paths;
  for (auto& p : EnumerateLabelPaths(graph, max_emitted)) {
    paths.emplace(p.units, std::move(p));
  }

  const int frames = posteriors.num_frames();
  const int units = posteriors.num_units();
  std::vector<UnitId> labels(static_cast<size_t>(frames), kBlankId);

  double best_total = std::numeric_limits<double>::infinity();
  const LabelPath* best_path = nullptr;
  std::vector<UnitId> best_labels;

  // Odometer over all units^frames labelings, lexicographic order.
  while (true) {
    auto it = paths.find(Collapse(labels));
    if (it != paths.end()) {
      const double total = AcousticCost(posteriors, labels) + it->second.cost;
      bool take = best_path == nullptr || total < best_total;
      if (!take && total == best_total) {
        const LabelPath& p = it->second;
        if (p.num_structural_arcs != best_path->num_structural_arcs) {
          take = p.num_structural_arcs < best_path->num_structural_arcs;
        } else {
          take = p.units < best_path->units;
        }
      }
      if (take && std::isfinite(total)) {
        best_total = total;
        best_path = &it->second;
        best_labels = labels;
      }
    }
    int pos = frames - 1;
    while (pos >= 0 && labels[static_cast<size_t>(pos)] == units - 1) {
      labels[static_cast<size_t>(pos)] = kBlankId;
      --pos;
    }
    if (pos < 0) break;
    ++labels[static_cast<size_t>(pos)];
  }

  if (best_path == nullptr) {
    throw Error(ErrorCode::kNoPath, "no labeling matches a graph path");
  }
  DecodeResult result;
  result.hyp = best_path->units;
  result.ops = best_path->ops;
  result.frame_labels = best_labels;
  result.token_spans = SpansFromFrameLabels(best_labels);
  result.structural_cost = best_path->cost;
  result.acoustic_cost = AcousticCost(posteriors, best_labels);
  result.total_score = best_total;
  result.num_deletions = CountDeletions(result.ops);
  result.num_insertions = CountInsertedUnits(result.ops);
  result.num_structural_arcs = best_path->num_structural_arcs;
  return result;
}

}  // namespace labelcheck
