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

#ifndef LABELCHECK_CORPUS_METADATA_H_
#define LABELCHECK_CORPUS_METADATA_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "labelcheck/validation.h"

namespace labelcheck {

using OrderedJson = nlohmann::ordered_json;

inline constexpr std::array<std::string_view, 10> kDomainTags = {
    "audiobook", "commentary", "documentary", "drama", "interview",
    "news",      "reading",    "talk",        "variety", "others"};

bool IsDomainTag(std::string_view tag);

// Descriptor of the stored audio encoding; metadata only, nothing here
// transcodes audio.
struct AudioFormat {
  int sample_rate_hz = 16000;
  int channels = 1;
  int bit_depth = 16;
  std::string codec = "opus";
  int bitrate_kbps = 32;
  OrderedJson extra = OrderedJson::object();

  friend bool operator==(const AudioFormat&, const AudioFormat&) = default;
};

struct SegmentRecord {
  std::string sid;
  double begin_time_s = 0.0;
  double end_time_s = 0.0;
  std::string text;
  Confidence confidence;
  // Empty until partitioned. Otherwise a partition label name
  // (STRONG_LABEL, WEAK_LABEL, OTHERS) or a training subset (S, M, L).
  std::string subset;
  OrderedJson extra = OrderedJson::object();

  double duration_s() const { return end_time_s - begin_time_s; }
  friend bool operator==(const SegmentRecord&, const SegmentRecord&) = default;
};

struct AudioRecord {
  std::string aid;
  std::string path;
  std::string url;
  std::string md5;
  double duration_s = 0.0;
  std::vector<std::string> tags;
  AudioFormat format;
  std::vector<SegmentRecord> segments;
  OrderedJson extra = OrderedJson::object();

  friend bool operator==(const AudioRecord&, const AudioRecord&) = default;
};

// The whole document; unknown top-level keys are kept in `extra`.
struct CorpusMetadata {
  std::vector<AudioRecord> audios;
  OrderedJson extra = OrderedJson::object();

  friend bool operator==(const CorpusMetadata&, const CorpusMetadata&) = default;
};

// Parses and validates a metadata document. Throws SchemaViolation whose
// pointer() names the offending value: the field itself for missing or
// malformed fields, the segment object when begin_time >= end_time.
CorpusMetadata LoadMetadata(std::string_view bytes);
CorpusMetadata LoadMetadataFile(const std::string& path);

// Times and durations are written rounded to centiseconds.
std::string SaveMetadata(const CorpusMetadata& corpus);
void SaveMetadataFile(const CorpusMetadata& corpus, const std::string& path);

// Lower-case hex MD5 of the file's raw bytes; Error(kFileMissing) if it
// cannot be opened.
std::string Md5HexOfFile(const std::string& path);
std::string Md5Hex(std::string_view bytes);
bool VerifyMd5(const AudioRecord& record);

inline constexpr double kMergeMaxSeconds = 8.0;

struct CandidateTuple {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string phrase;

  friend bool operator==(const CandidateTuple&, const CandidateTuple&) = default;
};

// Greedy left-to-right merge of consecutive subtitle candidates: the next
// tuple is absorbed while the merged span is still <= max_s, so each output
// stops right after its span first exceeds max_s. Gaps between tuples are
// merged over. Throws Error(kUnsortedInput) / Error(kOverlappingCandidates).
std::vector<CandidateTuple> MergeCandidates(std::span<const CandidateTuple> candidates,
                                            double max_s = kMergeMaxSeconds);

struct PartitionReport {
  double strong_hours = 0.0;
  double weak_hours = 0.0;
  double others_hours = 0.0;
  double total_hours = 0.0;  // sum of audio durations
};

PartitionReport ComputePartitionReport(const CorpusMetadata& corpus);

// Overwrites every segment's subset with its partition label.
void ApplyPartition(CorpusMetadata* corpus);

}  // namespace labelcheck

#endif  // LABELCHECK_CORPUS_METADATA_H_
