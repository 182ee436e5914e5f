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

#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "labelcheck/error.h"
#include "metadata_fixtures.h"

namespace labelcheck {
namespace {

namespace fs = std::filesystem;

constexpr char kMinimal[] = R"({
  "audios": [{
    "aid": "Y0000",
    "path": "audio/Y0000.opus",
    "url": "",
    "md5": "d41d8cd98f00b204e9800998ecf8427e",
    "duration": 12.5,
    "tags": ["news"],
    "segments": [{
      "sid": "Y0000_0",
      "begin_time": 0.5,
      "end_time": 4.25,
      "text": "不忘初心",
      "confidence": 1.0
    }]
  }]
})";

std::string PointerOf(std::string_view bytes) {
  try {
    LoadMetadata(bytes);
  } catch (const SchemaViolation& e) {
    return e.pointer();
  }
  return "<accepted>";
}

TEST(MetadataTest, MinimalDocumentRoundTrips) {
  const CorpusMetadata corpus = LoadMetadata(kMinimal);
  ASSERT_EQ(corpus.audios.size(), 1u);
  const AudioRecord& a = corpus.audios[0];
  EXPECT_EQ(a.aid, "Y0000");
  EXPECT_EQ(a.duration_s, 12.5);
  EXPECT_EQ(a.format, AudioFormat{});
  ASSERT_EQ(a.segments.size(), 1u);
  EXPECT_EQ(a.segments[0].text, "不忘初心");
  EXPECT_EQ(a.segments[0].duration_s(), 3.75);
  EXPECT_EQ(LoadMetadata(SaveMetadata(corpus)), corpus);
}

TEST(MetadataTest, DefaultAudioDescriptor) {
  const AudioFormat f;
  EXPECT_EQ(f.sample_rate_hz, 16000);
  EXPECT_EQ(f.channels, 1);
  EXPECT_EQ(f.bit_depth, 16);
  EXPECT_EQ(f.codec, "opus");
  EXPECT_EQ(f.bitrate_kbps, 32);
  const OrderedJson saved = OrderedJson::parse(SaveMetadata(LoadMetadata(kMinimal)));
  EXPECT_EQ(saved["audios"][0]["format"],
            OrderedJson::parse(R"({"sample_rate":16000,"channels":1,"bit_depth":16,)"
                               R"("codec":"opus","bitrate_kbps":32})"));
}

TEST(MetadataTest, UnknownFieldsArePreservedVerbatim) {
  OrderedJson doc = OrderedJson::parse(kMinimal);
  doc["license"] = {{"name", "CC-BY-4.0"}, {"version", 4}};
  doc["audios"][0]["speaker"] = "anon";
  doc["audios"][0]["segments"][0]["snr"] = 12.5;
  const std::string saved = SaveMetadata(LoadMetadata(doc.dump()));
  const OrderedJson back = OrderedJson::parse(saved);
  EXPECT_EQ(back["license"], doc["license"]);
  EXPECT_EQ(back["audios"][0]["speaker"], "anon");
  EXPECT_EQ(back["audios"][0]["segments"][0]["snr"], 12.5);
}

TEST(MetadataTest, SaveIsStable) {
  const CorpusMetadata corpus = LoadMetadata(kMinimal);
  const std::string once = SaveMetadata(corpus);
  EXPECT_EQ(SaveMetadata(LoadMetadata(once)), once);
  EXPECT_EQ(once.back(), '\n');
}

TEST(MetadataTest, RandomDocumentsRoundTrip) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const CorpusMetadata corpus = testing::RandomCorpus(rng);
    const CorpusMetadata back = LoadMetadata(SaveMetadata(corpus));
    ASSERT_EQ(back, corpus) << SaveMetadata(corpus);
  }
}

TEST(MetadataTest, BreachesReportTheirPointer) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const CorpusMetadata corpus = testing::RandomCorpus(rng, 1);
    const OrderedJson doc = OrderedJson::parse(SaveMetadata(corpus));
    const size_t a = std::uniform_int_distribution<size_t>(0, corpus.audios.size() - 1)(rng);
    const size_t s =
        std::uniform_int_distribution<size_t>(0, corpus.audios[a].segments.size() - 1)(rng);
    for (const auto& breach : testing::MetadataBreaches(doc, a, s)) {
      OrderedJson broken = doc;
      breach.apply(broken);
      EXPECT_EQ(PointerOf(broken.dump()), breach.pointer) << breach.name;
    }
  }
}

TEST(MetadataTest, InvalidJsonIsReportedAtRoot) {
  EXPECT_EQ(PointerOf("{"), "");
  EXPECT_EQ(PointerOf("[]"), "");
  EXPECT_EQ(PointerOf("{}"), "/audios");
}

TEST(MetadataTest, MissingFile) {
  try {
    LoadMetadataFile("/nonexistent/meta.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFileMissing);
  }
}

class Md5Test : public ::testing::Test {
 protected:
  void SetUp() override {
    path_ = (fs::temp_directory_path() / "labelcheck_md5_test.bin").string();
    std::ofstream(path_, std::ios::binary) << "The quick brown fox jumps over the lazy dog";
  }
  void TearDown() override { fs::remove(path_); }
  std::string path_;
};

TEST_F(Md5Test, KnownDigests) {
  EXPECT_EQ(Md5Hex(""), "d41d8cd98f00b204e9800998ecf8427e");
  EXPECT_EQ(Md5HexOfFile(path_), "9e107d9d372bb6826bd81d3542a419d6");
}

TEST_F(Md5Test, VerifiesRecords) {
  AudioRecord record;
  record.path = path_;
  record.md5 = Md5HexOfFile(path_);
  EXPECT_TRUE(VerifyMd5(record));
  std::fstream f(path_, std::ios::binary | std::ios::in | std::ios::out);
  f.seekp(3);
  f.put('X');
  f.close();
  EXPECT_FALSE(VerifyMd5(record));
  record.path = path_ + ".missing";
  try {
    VerifyMd5(record);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFileMissing);
  }
}

TEST(MergeCandidatesTest, Examples) {
  EXPECT_EQ(kMergeMaxSeconds, 8.0);
  const std::vector<CandidateTuple> three = {{0, 3, "不"}, {3, 6, "忘"}, {6, 9, "初"}};
  EXPECT_EQ(MergeCandidates(three), (std::vector<CandidateTuple>{{0, 9, "不忘初"}}));
  const std::vector<CandidateTuple> single = {{0, 10, "心"}};
  EXPECT_EQ(MergeCandidates(single), single);
  EXPECT_TRUE(MergeCandidates({}).empty());
}

TEST(MergeCandidatesTest, StartsNewTupleOnceLongEnough) {
  const std::vector<CandidateTuple> in = {
      {0, 5, "a"}, {5, 9, "b"}, {9, 10, "c"}, {11, 12, "d"}, {12.5, 21, "e"}, {21, 22, "f"}};
  EXPECT_EQ(MergeCandidates(in),
            (std::vector<CandidateTuple>{{0, 9, "ab"}, {9, 21, "cde"}, {21, 22, "f"}}));
}

TEST(MergeCandidatesTest, RejectsBadInput) {
  auto code_of = [](std::vector<CandidateTuple> in) {
    try {
      MergeCandidates(in);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  };
  EXPECT_EQ(code_of({{2, 3, "a"}, {0, 1, "b"}}), ErrorCode::kUnsortedInput);
  EXPECT_EQ(code_of({{0, 3, "a"}, {2, 4, "b"}}), ErrorCode::kOverlappingCandidates);
  EXPECT_EQ(code_of({{1, 1, "a"}}), ErrorCode::kInvalidArgument);
}

// Merging never loses audio: outputs tile the same time range, phrases
// concatenate in order, and only the last output may stay short.
TEST(MergeCandidatesTest, RandomInvariants) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<CandidateTuple> in;
    double t = 0.0;
    std::string all;
    const int n = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int i = 0; i < n; ++i) {
      t += std::uniform_int_distribution<int>(0, 2)(rng) * 0.5;
      const double len = std::uniform_int_distribution<int>(1, 12)(rng) * 0.5;
      const std::string phrase(1, static_cast<char>('a' + i));
      in.push_back({t, t + len, phrase});
      all += phrase;
      t += len;
    }
    const auto out = MergeCandidates(in);
    std::string joined;
    for (size_t k = 0; k < out.size(); ++k) {
      joined += out[k].phrase;
      if (k + 1 < out.size()) {
        EXPECT_GT(out[k].end_s - out[k].start_s, 8.0);
        EXPECT_LE(out[k].end_s, out[k + 1].start_s);
      }
    }
    EXPECT_EQ(joined, all);
    if (!in.empty()) {
      EXPECT_EQ(out.front().start_s, in.front().start_s);
      EXPECT_EQ(out.back().end_s, in.back().end_s);
    }
  }
}

CorpusMetadata HourFixture(const std::vector<double>& confidences) {
  CorpusMetadata corpus;
  AudioRecord audio;
  audio.aid = "A";
  audio.md5 = std::string(32, '0');
  audio.duration_s = 3600.0 * confidences.size();
  for (size_t k = 0; k < confidences.size(); ++k) {
    SegmentRecord seg;
    seg.sid = "A_" + std::to_string(k);
    seg.begin_time_s = 3600.0 * k;
    seg.end_time_s = 3600.0 * (k + 1);
    seg.confidence = Confidence(confidences[k]);
    audio.segments.push_back(seg);
  }
  corpus.audios.push_back(audio);
  return corpus;
}

TEST(PartitionReportTest, Examples) {
  const PartitionReport r = ComputePartitionReport(HourFixture({1.0, 1.0, 0.7, 0.1}));
  EXPECT_DOUBLE_EQ(r.strong_hours, 2.0);
  EXPECT_DOUBLE_EQ(r.weak_hours, 1.0);
  EXPECT_DOUBLE_EQ(r.others_hours, 1.0);
  EXPECT_DOUBLE_EQ(r.total_hours, 4.0);

  const PartitionReport empty = ComputePartitionReport(CorpusMetadata{});
  EXPECT_EQ(empty.strong_hours + empty.weak_hours + empty.others_hours + empty.total_hours, 0.0);

  const PartitionReport boundary = ComputePartitionReport(HourFixture({0.95, 0.95, 0.95}));
  EXPECT_DOUBLE_EQ(boundary.strong_hours, 3.0);
  EXPECT_EQ(boundary.weak_hours, 0.0);
}

TEST(PartitionReportTest, ApplyPartitionLabelsSegments) {
  CorpusMetadata corpus = HourFixture({1.0, 0.7, 0.1});
  ApplyPartition(&corpus);
  EXPECT_EQ(corpus.audios[0].segments[0].subset, "STRONG_LABEL");
  EXPECT_EQ(corpus.audios[0].segments[1].subset, "WEAK_LABEL");
  EXPECT_EQ(corpus.audios[0].segments[2].subset, "OTHERS");
  EXPECT_EQ(LoadMetadata(SaveMetadata(corpus)), corpus);
}

}  // namespace
}  // namespace labelcheck
