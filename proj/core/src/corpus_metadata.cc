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

#include "labelcheck/corpus_metadata.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <cctype>
#include <iterator>
#include <limits>

#include "labelcheck/error.h"

namespace labelcheck {

namespace {

const char* const kAudioKeys[] = {"aid", "path", "url", "md5", "duration",
                                  "tags", "format", "segments"};
const char* const kSegmentKeys[] = {"sid", "begin_time", "end_time", "text",
                                    "confidence", "subset"};
const char* const kFormatKeys[] = {"sample_rate", "channels", "bit_depth",
                                   "codec", "bitrate_kbps"};

template <size_t N>
OrderedJson UnknownFields(const OrderedJson& obj, const char* const (&known)[N]) {
  OrderedJson extra = OrderedJson::object();
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return it.key() == k;
        }) == std::end(known)) {
      extra[it.key()] = it.value();
    }
  }
  return extra;
}

// Typed field access that reports failures with a JSON pointer.
class Fields {
 public:
  Fields(const OrderedJson& obj, std::string pointer)
      : obj_(obj), pointer_(std::move(pointer)) {
    if (!obj_.is_object()) throw SchemaViolation(pointer_, "expected an object");
  }

  std::string Path(std::string_view key) const {
    return pointer_ + "/" + std::string(key);
  }
  bool Has(std::string_view key) const { return obj_.contains(std::string(key)); }

  const OrderedJson& Get(std::string_view key) const {
    auto it = obj_.find(std::string(key));
    if (it == obj_.end()) throw SchemaViolation(Path(key), "missing field");
    return *it;
  }

  std::string String(std::string_view key, bool allow_empty = true) const {
    const OrderedJson& v = Get(key);
    if (!v.is_string()) throw SchemaViolation(Path(key), "expected a string");
    auto s = v.get<std::string>();
    if (!allow_empty && s.empty()) throw SchemaViolation(Path(key), "must not be empty");
    return s;
  }

  double Number(std::string_view key) const {
    const OrderedJson& v = Get(key);
    if (!v.is_number()) throw SchemaViolation(Path(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw SchemaViolation(Path(key), "must be finite");
    return d;
  }

  int PositiveInt(std::string_view key) const {
    const OrderedJson& v = Get(key);
    if (!v.is_number_integer() || v.get<long long>() <= 0 ||
        v.get<long long>() > std::numeric_limits<int>::max()) {
      throw SchemaViolation(Path(key), "expected a positive integer");
    }
    return v.get<int>();
  }

  const OrderedJson& Array(std::string_view key) const {
    const OrderedJson& v = Get(key);
    if (!v.is_array()) throw SchemaViolation(Path(key), "expected an array");
    return v;
  }

 private:
  const OrderedJson& obj_;
  std::string pointer_;
};

bool IsHexDigest(std::string_view s) {
  return s.size() == 32 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
                  (c >= 'A' && c <= 'F');
         });
}

void CheckSubset(const SegmentRecord& seg, const std::string& pointer) {
  if (seg.subset.empty()) return;
  const PartitionLabel label = Classify(seg.confidence);
  if (auto parsed = ParsePartitionLabel(seg.subset)) {
    if (*parsed != label) {
      throw SchemaViolation(pointer, "subset " + seg.subset +
                                         " inconsistent with confidence");
    }
    return;
  }
  if (seg.subset == "S" || seg.subset == "M") {
    if (seg.confidence.value() != 1.0) {
      throw SchemaViolation(pointer, "subset " + seg.subset + " requires confidence 1.0");
    }
    return;
  }
  if (seg.subset == "L") {
    if (label != PartitionLabel::kStrongLabel) {
      throw SchemaViolation(pointer, "subset L requires a strong label");
    }
    return;
  }
  throw SchemaViolation(pointer, "unknown subset " + seg.subset);
}

SegmentRecord ParseSegment(const OrderedJson& json, const std::string& pointer,
                           double audio_duration) {
  Fields f(json, pointer);
  SegmentRecord seg;
  seg.sid = f.String("sid", /*allow_empty=*/false);
  seg.begin_time_s = f.Number("begin_time");
  if (seg.begin_time_s < 0) throw SchemaViolation(f.Path("begin_time"), "negative time");
  seg.end_time_s = f.Number("end_time");
  if (!(seg.begin_time_s < seg.end_time_s)) {
    throw SchemaViolation(pointer, "begin_time must be < end_time");
  }
  if (seg.end_time_s > audio_duration) {
    throw SchemaViolation(f.Path("end_time"), "segment ends after the audio");
  }
  seg.text = f.String("text");
  const double c = f.Number("confidence");
  if (c < 0.0 || c > 1.0) throw SchemaViolation(f.Path("confidence"), "outside [0, 1]");
  seg.confidence = Confidence(c);
  if (f.Has("subset")) {
    seg.subset = f.String("subset");
    CheckSubset(seg, f.Path("subset"));
  }
  seg.extra = UnknownFields(json, kSegmentKeys);
  return seg;
}

AudioFormat ParseFormat(const OrderedJson& json, const std::string& pointer) {
  Fields f(json, pointer);
  AudioFormat fmt;
  fmt.sample_rate_hz = f.PositiveInt("sample_rate");
  fmt.channels = f.PositiveInt("channels");
  fmt.bit_depth = f.PositiveInt("bit_depth");
  fmt.codec = f.String("codec", /*allow_empty=*/false);
  fmt.bitrate_kbps = f.PositiveInt("bitrate_kbps");
  fmt.extra = UnknownFields(json, kFormatKeys);
  return fmt;
}

AudioRecord ParseAudio(const OrderedJson& json, const std::string& pointer) {
  Fields f(json, pointer);
  AudioRecord audio;
  audio.aid = f.String("aid", /*allow_empty=*/false);
  audio.path = f.String("path");
  audio.url = f.String("url");
  audio.md5 = f.String("md5");
  if (!IsHexDigest(audio.md5)) {
    throw SchemaViolation(f.Path("md5"), "expected 32 hex characters");
  }
  audio.duration_s = f.Number("duration");
  if (audio.duration_s < 0) throw SchemaViolation(f.Path("duration"), "negative duration");

  const OrderedJson& tags = f.Array("tags");
  for (size_t k = 0; k < tags.size(); ++k) {
    const std::string p = f.Path("tags") + "/" + std::to_string(k);
    if (!tags[k].is_string()) throw SchemaViolation(p, "expected a string");
    auto tag = tags[k].get<std::string>();
    if (!IsDomainTag(tag)) throw SchemaViolation(p, "unknown domain tag " + tag);
    audio.tags.push_back(std::move(tag));
  }
  if (f.Has("format")) audio.format = ParseFormat(f.Get("format"), f.Path("format"));

  const OrderedJson& segments = f.Array("segments");
  for (size_t k = 0; k < segments.size(); ++k) {
    audio.segments.push_back(ParseSegment(
        segments[k], f.Path("segments") + "/" + std::to_string(k), audio.duration_s));
  }
  audio.extra = UnknownFields(json, kAudioKeys);
  return audio;
}

double Centis(double seconds) { return std::round(seconds * 100.0) / 100.0; }

void AppendExtra(const OrderedJson& extra, OrderedJson* obj) {
  for (auto it = extra.begin(); it != extra.end(); ++it) (*obj)[it.key()] = it.value();
}

}  // namespace

bool IsDomainTag(std::string_view tag) {
  return std::find(kDomainTags.begin(), kDomainTags.end(), tag) != kDomainTags.end();
}

CorpusMetadata LoadMetadata(std::string_view bytes) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaViolation("", std::string("invalid JSON: ") + e.what());
  }
  Fields f(doc, "");
  CorpusMetadata corpus;
  const OrderedJson& audios = f.Array("audios");
  for (size_t k = 0; k < audios.size(); ++k) {
    corpus.audios.push_back(ParseAudio(audios[k], "/audios/" + std::to_string(k)));
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "audios") corpus.extra[it.key()] = it.value();
  }
  return corpus;
}

CorpusMetadata LoadMetadataFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileMissing, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return LoadMetadata(bytes);
}

std::string SaveMetadata(const CorpusMetadata& corpus) {
  OrderedJson doc = OrderedJson::object();
  doc["audios"] = OrderedJson::array();
  for (const AudioRecord& audio : corpus.audios) {
    OrderedJson a = OrderedJson::object();
    a["aid"] = audio.aid;
    a["path"] = audio.path;
    a["url"] = audio.url;
    a["md5"] = audio.md5;
    a["duration"] = Centis(audio.duration_s);
    a["tags"] = audio.tags;
    OrderedJson fmt = OrderedJson::object();
    fmt["sample_rate"] = audio.format.sample_rate_hz;
    fmt["channels"] = audio.format.channels;
    fmt["bit_depth"] = audio.format.bit_depth;
    fmt["codec"] = audio.format.codec;
    fmt["bitrate_kbps"] = audio.format.bitrate_kbps;
    AppendExtra(audio.format.extra, &fmt);
    a["format"] = std::move(fmt);
    OrderedJson segments = OrderedJson::array();
    for (const SegmentRecord& seg : audio.segments) {
      OrderedJson s = OrderedJson::object();
      s["sid"] = seg.sid;
      s["begin_time"] = Centis(seg.begin_time_s);
      s["end_time"] = Centis(seg.end_time_s);
      s["text"] = seg.text;
      s["confidence"] = seg.confidence.value();
      if (!seg.subset.empty()) s["subset"] = seg.subset;
      AppendExtra(seg.extra, &s);
      segments.push_back(std::move(s));
    }
    a["segments"] = std::move(segments);
    AppendExtra(audio.extra, &a);
    doc["audios"].push_back(std::move(a));
  }
  AppendExtra(corpus.extra, &doc);
  return doc.dump(2) + "\n";
}

void SaveMetadataFile(const CorpusMetadata& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << SaveMetadata(corpus);
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
}

bool VerifyMd5(const AudioRecord& record) {
  std::string expected = record.md5;
  std::transform(expected.begin(), expected.end(), expected.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return Md5HexOfFile(record.path) == expected;
}

std::vector<CandidateTuple> MergeCandidates(std::span<const CandidateTuple> candidates,
                                            double max_s) {
  for (size_t i = 0; i < candidates.size(); ++i) {
    const CandidateTuple& c = candidates[i];
    if (!(c.start_s < c.end_s)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "candidate " + std::to_string(i) + " has start >= end");
    }
    if (i == 0) continue;
    if (c.start_s < candidates[i - 1].start_s) {
      throw Error(ErrorCode::kUnsortedInput,
                  "candidate " + std::to_string(i) + " starts before its predecessor");
    }
    if (c.start_s < candidates[i - 1].end_s) {
      throw Error(ErrorCode::kOverlappingCandidates,
                  "candidate " + std::to_string(i) + " overlaps its predecessor");
    }
  }

  std::vector<CandidateTuple> merged;
  for (const CandidateTuple& c : candidates) {
    if (!merged.empty() && merged.back().end_s - merged.back().start_s <= max_s) {
      merged.back().end_s = c.end_s;
      merged.back().phrase += c.phrase;
    } else {
      merged.push_back(c);
    }
  }
  return merged;
}

PartitionReport ComputePartitionReport(const CorpusMetadata& corpus) {
  PartitionReport report;
  for (const AudioRecord& audio : corpus.audios) {
    report.total_hours += audio.duration_s / 3600.0;
    for (const SegmentRecord& seg : audio.segments) {
      const double hours = seg.duration_s() / 3600.0;
      switch (Classify(seg.confidence)) {
        case PartitionLabel::kStrongLabel: report.strong_hours += hours; break;
        case PartitionLabel::kWeakLabel: report.weak_hours += hours; break;
        case PartitionLabel::kOthers: report.others_hours += hours; break;
      }
    }
  }
  return report;
}

void ApplyPartition(CorpusMetadata* corpus) {
  for (AudioRecord& audio : corpus->audios) {
    for (SegmentRecord& seg : audio.segments) {
      seg.subset = std::string(PartitionLabelName(Classify(seg.confidence)));
    }
  }
}

}  // namespace labelcheck
