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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "labelcheck/alignment_graph.h"
#include "labelcheck/corpus_metadata.h"
#include "labelcheck/error.h"
#include "labelcheck/force_decoder.h"
#include "labelcheck/mer.h"
#include "labelcheck/pgm.h"
#include "labelcheck/posteriors.h"
#include "labelcheck/subset.h"
#include "labelcheck/subtitle_boundary.h"
#include "labelcheck/units.h"

namespace labelcheck::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;

  // validate
  std::string posteriors;
  std::string ref;
  bool ref_given = false;
  std::string units;
  std::string batch;
  double p1 = kDefaultDeletionPenalty;
  double p2 = kDefaultInsertionPenalty;
  int beam = 0;
  double frame_shift_ms = kDefaultFrameShiftMs;
  std::string output;
  std::string dump_costs;
  std::string dump_graph;
  bool stamp = false;

  // partition, subset
  std::string meta;
  std::string which = "S";
  double hours = -1.0;
  uint64_t seed = 0;

  // mer
  std::string ref_tsv;
  std::string hyp_tsv;

  // subtitle-bounds
  std::string frames;
  double threshold = kDefaultChangeThreshold;

  // merge
  std::string candidates;
  double max_seconds = kMergeMaxSeconds;
};

struct Commands {
  CLI::App* validate = nullptr;
  CLI::App* partition = nullptr;
  CLI::App* mer = nullptr;
  CLI::App* subtitle_bounds = nullptr;
  CLI::App* merge = nullptr;
  CLI::App* subset = nullptr;
};

const auto kOpenUnitInterval = CLI::Validator(
    [](std::string& s) -> std::string {
      const double v = std::stod(s);
      return v > 0.0 && v < 1.0 ? "" : "must lie strictly between 0 and 1";
    },
    "(0,1)");

Commands BuildApp(CLI::App& app, Options& o) {
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config, "key=value file supplying flag defaults");

  Commands c;
  c.validate = app.add_subcommand("validate", "Force-decode a reference and score its label");
  c.validate->add_option("--posteriors", o.posteriors, "CPST posterior matrix");
  c.validate->add_option("--ref", o.ref, "Normalized reference text");
  c.validate->add_option("--units", o.units, "Unit inventory, one symbol per line")->required();
  c.validate->add_option("--batch", o.batch, "TSV of utt_id, posterior path, reference");
  c.validate->add_option("--p1", o.p1, "Deletion penalty")->check(CLI::NonNegativeNumber);
  c.validate->add_option("--p2", o.p2, "Insertion penalty")->check(CLI::NonNegativeNumber);
  c.validate->add_option("--beam", o.beam, "Live states kept per frame")
      ->check(CLI::PositiveNumber);
  c.validate->add_option("--frame-shift-ms", o.frame_shift_ms, "Posterior frame shift")
      ->check(CLI::PositiveNumber);
  c.validate->add_option("--output", o.output, "Report path (default stdout)");
  c.validate->add_option("--dump-costs", o.dump_costs, "Write the per-frame cost table");
  c.validate->add_option("--dump-graph", o.dump_graph, "Write the alignment graph arcs");
  c.validate->add_flag("--stamp", o.stamp, "Add a generation time to the report");

  c.partition = app.add_subcommand("partition", "Label segments by confidence");
  c.partition->add_option("--meta", o.meta, "Metadata JSON")->required();
  c.partition->add_option("--output", o.output, "Write the labelled metadata here");
  c.partition->add_flag("--stamp", o.stamp, "Add a generation time to the summary");

  c.mer = app.add_subcommand("mer", "Mixture error rate between two utt/text TSVs");
  c.mer->add_option("--ref", o.ref_tsv, "Reference TSV")->required();
  c.mer->add_option("--hyp", o.hyp_tsv, "Hypothesis TSV")->required();

  c.subtitle_bounds =
      app.add_subcommand("subtitle-bounds", "Split PGM subtitle crops into spans");
  c.subtitle_bounds->add_option("--frames", o.frames, "Directory of <index>.pgm files")
      ->required();
  c.subtitle_bounds->add_option("--threshold", o.threshold, "SSIM change threshold")
      ->check(kOpenUnitInterval);

  c.merge = app.add_subcommand("merge", "Merge short candidate tuples");
  c.merge->add_option("--candidates", o.candidates, "TSV of start, end, phrase")->required();
  c.merge->add_option("--max-seconds", o.max_seconds, "Stop growing a tuple past this")
      ->check(CLI::PositiveNumber);
  c.merge->add_option("--output", o.output, "Output TSV (default stdout)");

  c.subset = app.add_subcommand("subset", "Draw a training subset");
  c.subset->add_option("--meta", o.meta, "Metadata JSON")->required();
  c.subset->add_option("--which", o.which, "S, M or L")
      ->check(CLI::IsMember({"S", "M", "L"}));
  c.subset->add_option("--hours", o.hours, "Target hours (default 100 for S, 1000 for M)")
      ->check(CLI::NonNegativeNumber);
  c.subset->add_option("--seed", o.seed, "Shuffle seed");
  return c;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileMissing, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path);
}

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteText(path, text);
  }
}

std::string UtcStamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
void ParallelFor(size_t n, int workers, const std::function<void(size_t)>& fn) {
  const size_t threads = std::min(n, static_cast<size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (size_t k = 0; k < threads; ++k) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

OrderedJson SymbolArray(const std::vector<UnitId>& ids, const UnitInventory& inv) {
  OrderedJson a = OrderedJson::array();
  for (UnitId id : ids) a.push_back(inv.Symbol(id));
  return a;
}

std::string_view EditTypeName(EditType t) {
  switch (t) {
    case EditType::kMatch: return "MATCH";
    case EditType::kDelete: return "DEL";
    case EditType::kInsert: return "INS";
  }
  return "MATCH";
}

struct ValidateOutcome {
  OrderedJson report;
  PartitionLabel label = PartitionLabel::kOthers;
};

ValidateOutcome ValidateOne(const Options& o, const UnitInventory& inv,
                            const std::string& posterior_path, const std::string& ref_text,
                            std::string* cost_table, std::string* graph_text) {
  const std::vector<UnitId> ref = TokenizeReference(ref_text, inv);
  AlignConfig cfg;
  cfg.deletion_penalty = o.p1;
  cfg.insertion_penalty = o.p2;
  const AlignmentGraph graph = BuildAlignmentGraph(ref, inv, cfg);
  if (graph_text) *graph_text = graph.ToText(inv);
  const PosteriorMatrix post = ReadPosteriorsFile(posterior_path);
  DecodeOptions dopts;
  if (o.beam > 0) dopts.beam = o.beam;
  dopts.record_cost_table = cost_table != nullptr;
  const DecodeResult r = ForceDecode(post, graph, dopts);
  if (cost_table) *cost_table = FormatCostTable(r);

  const Confidence confidence = ComputeConfidence(ref, r.hyp);
  ValidateOutcome outcome;
  outcome.label = Classify(confidence);

  OrderedJson& j = outcome.report;
  j["posteriors"] = posterior_path;
  j["ref"] = SymbolArray(ref, inv);
  j["hyp"] = SymbolArray(r.hyp, inv);
  j["hyp_text"] = JoinSymbols(r.hyp, inv, "");
  OrderedJson ops = OrderedJson::array();
  for (const EditOp& op : r.ops) {
    ops.push_back({{"op", EditTypeName(op.type)},
                   {"ref_pos", op.ref_pos},
                   {"units", SymbolArray(op.units, inv)}});
  }
  j["ops"] = std::move(ops);
  j["ops_text"] = FormatOps(r.ops, inv);
  j["confidence"] = confidence.value();
  j["label"] = PartitionLabelName(outcome.label);
  j["total_score"] = r.total_score;
  j["acoustic_cost"] = r.acoustic_cost;
  j["structural_cost"] = r.structural_cost;
  j["num_deletions"] = r.num_deletions;
  j["num_insertions"] = r.num_insertions;
  OrderedJson times = OrderedJson::array();
  for (const TokenTime& t : ExtractTimestamps(r, o.frame_shift_ms)) {
    times.push_back(
        {{"unit", inv.Symbol(t.unit)}, {"begin_ms", t.begin_ms}, {"end_ms", t.end_ms}});
  }
  j["timestamps"] = std::move(times);
  j["config"] = {{"p1", o.p1},
                 {"p2", o.p2},
                 {"beam", o.beam > 0 ? OrderedJson(o.beam) : OrderedJson(nullptr)},
                 {"frame_shift_ms", o.frame_shift_ms}};
  if (o.stamp) j["stamp"] = UtcStamp();
  return outcome;
}

struct BatchItem {
  std::string utt_id;
  std::string posteriors;
  std::string ref;
};

std::vector<BatchItem> ReadBatch(const std::string& path) {
  std::istringstream in(ReadText(path));
  const fs::path base = fs::path(path).parent_path();
  std::vector<BatchItem> items;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error(ErrorCode::kSchemaViolation,
                  fmt::format("{}:{}: expected utt_id, posterior path and reference", path,
                              line_no));
    }
    BatchItem item{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1)};
    if (fs::path(item.posteriors).is_relative()) {
      item.posteriors = (base / item.posteriors).string();
    }
    items.push_back(std::move(item));
  }
  return items;
}

int RunValidate(const Options& o, std::ostream& out, std::ostream& err) {
  const UnitInventory inv = UnitInventory::FromFile(o.units);
  if (o.batch.empty()) {
    if (o.posteriors.empty() || !o.ref_given) {
      err << "validate: --posteriors and --ref are required without --batch\n";
      return kExitUsage;
    }
    std::string costs, graph;
    const ValidateOutcome v =
        ValidateOne(o, inv, o.posteriors, o.ref, o.dump_costs.empty() ? nullptr : &costs,
                    o.dump_graph.empty() ? nullptr : &graph);
    if (!o.dump_costs.empty()) WriteText(o.dump_costs, costs);
    if (!o.dump_graph.empty()) WriteText(o.dump_graph, graph);
    Emit(o.output, v.report.dump(2) + "\n", out);
    return ExitCodeFor(v.label);
  }

  if (!o.posteriors.empty() || !o.dump_costs.empty() || !o.dump_graph.empty()) {
    err << "validate: --batch excludes --posteriors, --dump-costs and --dump-graph\n";
    return kExitUsage;
  }
  const std::vector<BatchItem> items = ReadBatch(o.batch);
  std::vector<std::string> lines(items.size());
  std::vector<char> failed(items.size(), 0);
  ParallelFor(items.size(), WorkerCount(), [&](size_t i) {
    OrderedJson j;
    try {
      ValidateOutcome v = ValidateOne(o, inv, items[i].posteriors, items[i].ref, nullptr, nullptr);
      j = OrderedJson{{"utt_id", items[i].utt_id}};
      for (auto it = v.report.begin(); it != v.report.end(); ++it) j[it.key()] = it.value();
    } catch (const Error& e) {
      j = OrderedJson{{"utt_id", items[i].utt_id}, {"error", e.what()}};
      failed[i] = 1;
    }
    lines[i] = j.dump() + "\n";
  });
  std::string text;
  for (const auto& l : lines) text += l;
  Emit(o.output, text, out);
  const auto bad = std::count(failed.begin(), failed.end(), 1);
  if (bad > 0) {
    err << fmt::format("validate: {} of {} utterances failed\n", bad, items.size());
    return kExitIo;
  }
  return kExitOk;
}

int RunPartition(const Options& o, std::ostream& out) {
  CorpusMetadata corpus = LoadMetadataFile(o.meta);
  ApplyPartition(&corpus);
  if (!o.output.empty()) SaveMetadataFile(corpus, o.output);
  const PartitionReport r = ComputePartitionReport(corpus);
  if (o.stamp) out << "# generated " << UtcStamp() << "\n";
  out << fmt::format("subset\thours\nSTRONG_LABEL\t{:.4f}\nWEAK_LABEL\t{:.4f}\n"
                     "OTHERS\t{:.4f}\nTOTAL\t{:.4f}\n",
                     r.strong_hours, r.weak_hours, r.others_hours, r.total_hours);
  return kExitOk;
}

std::vector<std::pair<std::string, std::string>> ReadTsvFile(const std::string& path) {
  std::istringstream in(ReadText(path));
  return ReadUttTextTsv(in);
}

int RunMer(const Options& o, std::ostream& out, std::ostream& err) {
  const auto refs = ReadTsvFile(o.ref_tsv);
  const auto hyps = ReadTsvFile(o.hyp_tsv);
  std::map<std::string, std::string> hyp_by_id;
  for (const auto& [id, text] : hyps) {
    if (!hyp_by_id.emplace(id, text).second) {
      err << "mer: duplicate utterance id " << id << " in " << o.hyp_tsv << "\n";
      return kExitIo;
    }
  }
  std::set<std::string> seen;
  for (const auto& [id, text] : refs) {
    if (!seen.insert(id).second) {
      err << "mer: duplicate utterance id " << id << " in " << o.ref_tsv << "\n";
      return kExitIo;
    }
    if (!hyp_by_id.count(id)) {
      err << "mer: utterance " << id << " has no hypothesis\n";
      return kExitIo;
    }
  }
  if (seen.size() != hyp_by_id.size()) {
    err << "mer: hypothesis file has utterances missing from the reference\n";
    return kExitIo;
  }

  std::string text = "utt_id\terrors\tref_tokens\tmer\n";
  long errors = 0, tokens = 0;
  for (const auto& [id, ref] : refs) {
    const MerCounts c = MerCount(ref, hyp_by_id[id]);
    errors += c.errors;
    tokens += c.ref_tokens;
    text += c.ref_tokens > 0
                ? fmt::format("{}\t{}\t{}\t{:.2f}\n", id, c.errors, c.ref_tokens,
                              100.0 * c.errors / c.ref_tokens)
                : fmt::format("{}\t{}\t0\t-\n", id, c.errors);
  }
  if (tokens == 0) {
    err << "mer: references contain no tokens\n";
    return kExitIo;
  }
  text += fmt::format("TOTAL\t{}\t{}\t{:.2f}\n", errors, tokens, 100.0 * errors / tokens);
  out << text;
  return kExitOk;
}

int RunSubtitleBounds(const Options& o, std::ostream& out) {
  const std::vector<IndexedFrame> indexed = LoadFrameDirectory(o.frames);
  if (indexed.empty()) throw Error(ErrorCode::kFileMissing, "no <index>.pgm files in " + o.frames);
  std::vector<FrameRegion> frames;
  frames.reserve(indexed.size());
  for (const auto& f : indexed) frames.push_back(f.region);
  std::string text;
  for (const SubtitleSpan& s : DetectSpans(frames, o.threshold, WorkerCount())) {
    text += fmt::format("{}\t{}\n", indexed[static_cast<size_t>(s.start_frame)].index,
                        indexed[static_cast<size_t>(s.end_frame)].index);
  }
  out << text;
  return kExitOk;
}

double ParseSeconds(const std::string& field, const std::string& where) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kSchemaViolation, where + ": bad time '" + field + "'");
  }
  return v;
}

int RunMerge(const Options& o, std::ostream& out) {
  std::istringstream in(ReadText(o.candidates));
  std::vector<CandidateTuple> tuples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = fmt::format("{}:{}", o.candidates, line_no);
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error(ErrorCode::kSchemaViolation, where + ": expected start, end and phrase");
    }
    tuples.push_back({ParseSeconds(line.substr(0, t1), where),
                      ParseSeconds(line.substr(t1 + 1, t2 - t1 - 1), where),
                      line.substr(t2 + 1)});
  }
  std::string text;
  for (const CandidateTuple& c : MergeCandidates(tuples, o.max_seconds)) {
    text += fmt::format("{}\t{}\t{}\n", c.start_s, c.end_s, c.phrase);
  }
  Emit(o.output, text, out);
  return kExitOk;
}

int RunSubset(const Options& o, std::ostream& out) {
  const CorpusMetadata corpus = LoadMetadataFile(o.meta);
  std::vector<SegmentRecord> segments;
  for (const AudioRecord& a : corpus.audios) {
    segments.insert(segments.end(), a.segments.begin(), a.segments.end());
  }
  const TrainingSubset which = *ParseTrainingSubset(o.which);
  double hours = o.hours;
  if (hours < 0) hours = which == TrainingSubset::kM ? kSubsetMHours : kSubsetSHours;
  std::string text;
  for (const std::string& id : SelectTrainingSubset(segments, hours, which, o.seed)) {
    text += id + "\n";
  }
  out << text;
  return kExitOk;
}

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Subcommand option names, without the leading dashes.
std::set<std::string> OptionNames(const CLI::App* sub) {
  std::set<std::string> names;
  for (const CLI::Option* opt : sub->get_options()) {
    for (const std::string& n : opt->get_lnames()) names.insert(n);
  }
  return names;
}

// Config entries become "--key=value" arguments unless the flag was given
// on the command line. Returns false (with a message) on an unknown key.
bool ConfigArgs(const std::map<std::string, std::string>& config, const CLI::App& app,
                const CLI::App* selected, std::vector<std::string>* extra, std::ostream& err) {
  std::set<std::string> known;
  for (const CLI::App* sub : app.get_subcommands({})) {
    const auto names = OptionNames(sub);
    known.insert(names.begin(), names.end());
  }
  const auto local = OptionNames(selected);
  for (const auto& [key, value] : config) {
    if (!known.count(key) || key == "help" || key == "config") {
      err << "config: unknown key '" << key << "'\n";
      return false;
    }
    if (!local.count(key)) continue;
    const CLI::Option* opt = selected->get_option("--" + key);
    if (opt->count() > 0) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1") extra->push_back("--" + key);
    } else {
      extra->push_back("--" + key + "=" + value);
    }
  }
  return true;
}

CLI::App* Selected(const Commands& c) {
  for (CLI::App* sub :
       {c.validate, c.partition, c.mer, c.subtitle_bounds, c.merge, c.subset}) {
    if (sub->parsed()) return sub;
  }
  return nullptr;
}

int Parse(CLI::App& app, const std::vector<std::string>& args, std::ostream& out,
          std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return -1;
}

}  // namespace

int ExitCodeFor(PartitionLabel label) {
  switch (label) {
    case PartitionLabel::kStrongLabel: return kExitOk;
    case PartitionLabel::kWeakLabel: return kExitWeak;
    case PartitionLabel::kOthers: return kExitOthers;
  }
  return kExitOthers;
}

int WorkerCount() {
  const int hardware = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("CLG_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, hardware));
  }
  return hardware;
}

std::map<std::string, std::string> ParseConfigFile(const std::string& path) {
  std::istringstream in(ReadText(path));
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("{}:{}: expected key=value", path, line_no));
    }
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("{}:{}: empty key", path, line_no));
    }
    entries[key] = value;
  }
  return entries;
}

int RunMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> effective = args;
  if (effective.empty()) effective.push_back("labelcheck");
  Options o;
  auto app = std::make_unique<CLI::App>("Label validation for weakly supervised speech corpora",
                                        "labelcheck");
  Commands c = BuildApp(*app, o);
  if (int code = Parse(*app, effective, out, err); code >= 0) return code;

  try {
    if (!o.config.empty()) {
      std::map<std::string, std::string> config;
      try {
        config = ParseConfigFile(o.config);
      } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitIo;
      }
      std::vector<std::string> extra;
      if (!ConfigArgs(config, *app, Selected(c), &extra, err)) return kExitUsage;
      if (!extra.empty()) {
        effective.insert(effective.end(), extra.begin(), extra.end());
        o = Options{};
        app = std::make_unique<CLI::App>(app->get_description(), "labelcheck");
        c = BuildApp(*app, o);
        if (int code = Parse(*app, effective, out, err); code >= 0) return code;
      }
    }

    const CLI::App* sub = Selected(c);
    o.ref_given = c.validate->count("--ref") > 0;
    if (sub == c.validate) return RunValidate(o, out, err);
    if (sub == c.partition) return RunPartition(o, out);
    if (sub == c.mer) return RunMer(o, out, err);
    if (sub == c.subtitle_bounds) return RunSubtitleBounds(o, out);
    if (sub == c.merge) return RunMerge(o, out);
    if (sub == c.subset) return RunSubset(o, out);
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace labelcheck::cli
