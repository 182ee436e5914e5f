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


#include "cli.h"

#include <cstdlib>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli_fixtures.h"
#include "labelcheck/pgm.h"
#include "frame_fixtures.h"

namespace labelcheck {
namespace {

using nlohmann::json;
using testing::CliRun;
using testing::ReadFile;
using testing::RunCli;
using testing::TempDir;

class ValidateCommandTest : public ::testing::Test {
 protected:
  void SetUp() override { testing::WriteValidateFixture(dir_); }

  CliRun Validate(const std::string& ref, std::vector<std::string> extra = {}) {
    std::vector<std::string> args = {"validate", "--units", dir_.File("units.txt"),
                                     "--posteriors", dir_.File("spoken.cpst"), "--ref", ref};
    args.insert(args.end(), extra.begin(), extra.end());
    return RunCli(args);
  }

  TempDir dir_{"validate"};
};

TEST_F(ValidateCommandTest, MatchingReferenceIsStrong) {
  const CliRun run = Validate("不忘初心");
  ASSERT_EQ(run.code, 0) << run.err;
  const json report = json::parse(run.out);
  EXPECT_EQ(report["confidence"], 1.0);
  EXPECT_EQ(report["label"], "STRONG_LABEL");
  EXPECT_EQ(report["hyp_text"], "不忘初心");
  EXPECT_EQ(report["ops_text"], "MATCH MATCH MATCH MATCH");
  EXPECT_FALSE(report.contains("stamp"));
  // Three frames per token plus a blank at the default 40 ms shift.
  ASSERT_EQ(report["timestamps"].size(), 4u);
  EXPECT_EQ(report["timestamps"][1],
            json::parse(R"({"unit":"忘","begin_ms":160.0,"end_ms":280.0})"));
}

TEST_F(ValidateCommandTest, OneWrongTokenIsWeak) {
  const CliRun run = Validate("不忘出心");
  ASSERT_EQ(run.code, 3) << run.err;
  const json report = json::parse(run.out);
  EXPECT_EQ(report["confidence"], 0.75);
  EXPECT_EQ(report["label"], "WEAK_LABEL");
  EXPECT_EQ(report["hyp_text"], "不忘初心");
  EXPECT_EQ(report["num_deletions"], 1);
  EXPECT_EQ(report["num_insertions"], 1);
}

TEST_F(ValidateCommandTest, MostlyWrongReferenceIsOthers) {
  const CliRun run = Validate("出出出");
  EXPECT_EQ(run.code, 4) << run.err;
  EXPECT_EQ(json::parse(run.out)["label"], "OTHERS");
}

TEST_F(ValidateCommandTest, ErrorsMapToExitCodes) {
  EXPECT_EQ(RunCli({"validate", "--units", dir_.File("units.txt"), "--posteriors",
                    dir_.File("missing.cpst"), "--ref", "不"})
                .code,
            2);
  EXPECT_EQ(Validate("不x").code, 2);
  EXPECT_EQ(Validate("不", {"--p1", "-1"}).code, 1);
  EXPECT_EQ(Validate("不", {"--beam", "0"}).code, 1);
  EXPECT_EQ(Validate("不", {"--bogus"}).code, 1);
  EXPECT_EQ(RunCli({}).code, 1);
  EXPECT_EQ(RunCli({"validate", "--units", dir_.File("units.txt"), "--ref", "不"}).code, 1);
  EXPECT_EQ(RunCli({"--help"}).code, 0);
}

TEST_F(ValidateCommandTest, WritesReportAndDumps) {
  const CliRun run = Validate("不忘初心", {"--output", dir_.File("report.json"), "--dump-costs",
                                          dir_.File("costs.tsv"), "--dump-graph",
                                          dir_.File("graph.txt"), "--stamp"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_TRUE(run.out.empty());
  EXPECT_TRUE(json::parse(ReadFile(dir_.File("report.json"))).contains("stamp"));
  const std::string costs = ReadFile(dir_.File("costs.tsv"));
  EXPECT_EQ(std::count(costs.begin(), costs.end(), '\n'), 17);
  EXPECT_EQ(ReadFile(dir_.File("graph.txt")).substr(0, 10), "0 1 不 0\n");
}

TEST_F(ValidateCommandTest, PenaltiesFromFlagsAndConfig) {
  // Free insertions and deletions make substitution as cheap as a match.
  const json flagged = json::parse(Validate("不忘出心", {"--p1", "0", "--p2", "0"}).out);
  EXPECT_EQ(flagged["config"]["p1"], 0.0);
  const std::string conf = dir_.Write("run.conf", "# defaults\np1 = 0\np2=0.5\nthreshold=0.5\n");
  const json from_config = json::parse(Validate("不忘出心", {"--config", conf}).out);
  EXPECT_EQ(from_config["config"]["p1"], 0.0);
  EXPECT_EQ(from_config["config"]["p2"], 0.5);
  const json overridden = json::parse(Validate("不忘出心", {"--config", conf, "--p1", "3"}).out);
  EXPECT_EQ(overridden["config"]["p1"], 3.0);
  EXPECT_EQ(overridden["config"]["p2"], 0.5);

  const std::string stamped = dir_.Write("stamp.conf", "stamp=true\n");
  EXPECT_TRUE(json::parse(Validate("不忘初心", {"--config", stamped}).out).contains("stamp"));
  EXPECT_EQ(Validate("不", {"--config", dir_.Write("bad.conf", "nonsense=1\n")}).code, 1);
  EXPECT_EQ(Validate("不", {"--config", dir_.Write("junk.conf", "p1\n")}).code, 1);
  EXPECT_EQ(Validate("不", {"--config", dir_.File("absent.conf")}).code, 2);
}

TEST_F(ValidateCommandTest, BatchKeepsInputOrder) {
  std::string tsv;
  const char* refs[] = {"不忘初心", "不忘出心", "出出出", "不忘初心"};
  for (int i = 0; i < 4; ++i) {
    tsv += "utt" + std::to_string(i) + "\tspoken.cpst\t" + refs[i] + "\n";
  }
  const std::string batch = dir_.Write("batch.tsv", tsv);
  setenv("CLG_WORKERS", "3", 1);
  const CliRun run = RunCli({"validate", "--units", dir_.File("units.txt"), "--batch", batch});
  unsetenv("CLG_WORKERS");
  ASSERT_EQ(run.code, 0) << run.err;
  std::istringstream lines(run.out);
  std::string line;
  std::vector<std::string> labels;
  for (int i = 0; std::getline(lines, line); ++i) {
    const json j = json::parse(line);
    EXPECT_EQ(j["utt_id"], "utt" + std::to_string(i));
    labels.push_back(j["label"]);
  }
  EXPECT_EQ(labels,
            (std::vector<std::string>{"STRONG_LABEL", "WEAK_LABEL", "OTHERS", "STRONG_LABEL"}));
  EXPECT_EQ(RunCli({"validate", "--units", dir_.File("units.txt"), "--batch", batch}).out,
            run.out);

  const std::string broken = dir_.Write("broken.tsv", tsv + "utt9\tnope.cpst\t不\n");
  const CliRun bad = RunCli({"validate", "--units", dir_.File("units.txt"), "--batch", broken});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("\"utt_id\":\"utt9\",\"error\""), std::string::npos);
}

TEST(WorkerCountTest, ReadsEnvironment) {
  setenv("CLG_WORKERS", "1", 1);
  EXPECT_EQ(cli::WorkerCount(), 1);
  setenv("CLG_WORKERS", "zero", 1);
  EXPECT_GE(cli::WorkerCount(), 1);
  unsetenv("CLG_WORKERS");
  EXPECT_GE(cli::WorkerCount(), 1);
}

TEST(PartitionCommandTest, PrintsHoursAndLabelsSegments) {
  TempDir dir("partition");
  const std::string meta = dir.Write("meta.json", testing::PartitionFixtureJson());
  const CliRun run = RunCli({"partition", "--meta", meta, "--output", dir.File("out.json")});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(run.out,
            "subset\thours\nSTRONG_LABEL\t2.0000\nWEAK_LABEL\t1.0000\nOTHERS\t1.0000\n"
            "TOTAL\t4.0000\n");
  const json out = json::parse(ReadFile(dir.File("out.json")));
  EXPECT_EQ(out["audios"][0]["segments"][2]["subset"], "WEAK_LABEL");
  EXPECT_EQ(out["license"], "CC-BY-4.0");
}

TEST(PartitionCommandTest, EmptyAndInvalidMetadata) {
  TempDir dir("partition_edge");
  const CliRun empty = RunCli({"partition", "--meta", dir.Write("e.json", R"({"audios":[]})")});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out,
            "subset\thours\nSTRONG_LABEL\t0.0000\nWEAK_LABEL\t0.0000\nOTHERS\t0.0000\n"
            "TOTAL\t0.0000\n");
  json doc = json::parse(testing::PartitionFixtureJson());
  doc["audios"][0]["segments"][1].erase("confidence");
  const CliRun bad = RunCli({"partition", "--meta", dir.Write("bad.json", doc.dump())});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("/audios/0/segments/1/confidence"), std::string::npos);
  EXPECT_EQ(RunCli({"partition", "--meta", dir.File("none.json")}).code, 2);
}

TEST(MerCommandTest, PerUtteranceAndTotal) {
  TempDir dir("mer");
  const std::string ref = dir.Write("ref.tsv", "u1\t我们ok了\nu2\t今天我们去 park 散步吧好\n");
  const std::string hyp = dir.Write("hyp.tsv", "u2\t今天他们去 park 散步好\nu1\t我们ok了\n");
  const CliRun run = RunCli({"mer", "--ref", ref, "--hyp", hyp});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(run.out,
            "utt_id\terrors\tref_tokens\tmer\nu1\t0\t4\t0.00\nu2\t2\t10\t20.00\n"
            "TOTAL\t2\t14\t14.29\n");
  const std::string partial = dir.Write("partial.tsv", "u1\t我们ok了\n");
  EXPECT_EQ(RunCli({"mer", "--ref", ref, "--hyp", partial}).code, 2);
  EXPECT_EQ(RunCli({"mer", "--ref", partial, "--hyp", hyp}).code, 2);
}

TEST(SubtitleBoundsCommandTest, PlantedSceneChange) {
  TempDir dir("frames");
  for (int i = 0; i < 10; ++i) {
    dir.Write(std::to_string(i) + ".pgm",
              EncodePgm(testing::SubtitleScene(i < 5 ? 10 : 11)));
  }
  const CliRun run = RunCli({"subtitle-bounds", "--frames", dir.path().string()});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(run.out, "0\t4\n5\t9\n");
  EXPECT_EQ(RunCli({"subtitle-bounds", "--frames", dir.path().string(), "--threshold", "1.5"})
                .code,
            1);
  EXPECT_EQ(RunCli({"subtitle-bounds", "--frames", dir.File("nope")}).code, 2);
}

TEST(MergeCommandTest, MergesAndRejectsUnsorted) {
  TempDir dir("merge");
  const CliRun run =
      RunCli({"merge", "--candidates", dir.Write("c.tsv", "0\t3\t不\n3\t6\t忘\n6\t9\t初\n")});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(run.out, "0\t9\t不忘初\n");
  const CliRun wide = RunCli(
      {"merge", "--candidates", dir.File("c.tsv"), "--max-seconds", "2.5"});
  EXPECT_EQ(wide.out, "0\t3\t不\n3\t6\t忘\n6\t9\t初\n");
  EXPECT_EQ(RunCli({"merge", "--candidates", dir.Write("u.tsv", "5\t6\ta\n0\t1\tb\n")}).code, 2);
  EXPECT_EQ(RunCli({"merge", "--candidates", dir.Write("x.tsv", "abc\t6\ta\n")}).code, 2);
}

TEST(SubsetCommandTest, DrawsReproducibly) {
  TempDir dir("subset");
  json doc = json::parse(testing::PartitionFixtureJson());
  const std::string meta = dir.Write("meta.json", doc.dump());
  const CliRun l = RunCli({"subset", "--meta", meta, "--which", "L"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_EQ(l.out, "A_0\nA_1\n");
  const CliRun s = RunCli({"subset", "--meta", meta, "--which", "S", "--hours", "1", "--seed", "4"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(std::count(s.out.begin(), s.out.end(), '\n'), 1);
  EXPECT_EQ(RunCli({"subset", "--meta", meta, "--which", "S", "--hours", "1", "--seed", "4"}).out,
            s.out);
  EXPECT_EQ(RunCli({"subset", "--meta", meta, "--which", "S"}).code, 2);
}

}  // namespace
}  // namespace labelcheck
