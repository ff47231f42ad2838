// Copyright 2026 The crowdrel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// crowdrel command line: crowd annotation processing from raw judgments to
// disagreement-aware training labels and evaluation reports.
//
// Exit codes: 0 success, 1 data or validation error, 2 configuration error.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crowdrel/errors.hpp"
#include "crowdrel/evaluation.hpp"
#include "crowdrel/ingest.hpp"
#include "crowdrel/parallel.hpp"
#include "crowdrel/reports.hpp"
#include "crowdrel/schema.hpp"
#include "crowdrel/scoring.hpp"
#include "crowdrel/simulator.hpp"
#include "crowdrel/stability.hpp"
#include "crowdrel/text.hpp"
#include "crowdrel/vectors.hpp"
#include "crowdrel/worker_quality.hpp"

namespace {

namespace fs = std::filesystem;
using namespace crowdrel;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitConfig = 2;

void EmitErrorJson(const std::string& type, const std::string& message) {
  std::string escaped;
  for (char c : message) {
    if (c == '"' || c == '\\') escaped += '\\';
    if (c == '\n') {
      escaped += "\\n";
      continue;
    }
    escaped += c;
  }
  std::cerr << "{\"error\":{\"type\":\"" << type << "\",\"message\":\""
            << escaped << "\"}}\n";
}

std::ofstream OpenOutput(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + dir.string() +
                      "': " + ec.message());
  }
  fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write '" + path.string() + "'");
  }
  return out;
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open '" + path + "'");
  }
  return in;
}

struct BundlePaths {
  std::string schema;
  std::string sentences;
  std::string judgments;
  std::string expert;
  std::string out = ".";
};

void AddBundleOptions(CLI::App* cmd, BundlePaths& paths, bool need_sentences,
                      bool need_expert) {
  cmd->add_option("--schema", paths.schema, "Relation schema file")->required();
  auto* sentences =
      cmd->add_option("--sentences", paths.sentences, "sentences.csv");
  if (need_sentences) sentences->required();
  cmd->add_option("--judgments", paths.judgments, "judgments.csv")->required();
  auto* expert = cmd->add_option("--expert", paths.expert, "expert.csv");
  if (need_expert) expert->required();
  cmd->add_option("--out", paths.out, "Output directory (default .)");
}

// Loads, validates, and dedupes. Datasets with validation errors never reach
// the processing stages.
DatasetBundle LoadAccepted(const BundlePaths& paths) {
  LoadResult result = LoadBundle(paths.schema, paths.sentences,
                                 paths.judgments, paths.expert);
  if (!result.report.Accepted()) {
    throw DataError("dataset failed validation with " +
                    std::to_string(result.report.ErrorCount()) +
                    " errors; run 'crowdrel validate' for the full report");
  }
  return std::move(result.bundle);
}

RelationSchema LoadSchema(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ParseSchema(in, path);
}

std::vector<Judgment> LoadJudgments(const std::string& path,
                                    const RelationSchema& schema) {
  std::ifstream in = OpenInput(path);
  return DedupeJudgments(ParseJudgments(in, schema, path));
}

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  auto push = [&](double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ConfigError("grid value " + FormatDouble(value) +
                        " lies outside [0, 1]");
    }
    grid.push_back(value);
  };
  if (text.find(':') != std::string::npos) {
    auto parts = Split(text, ':');
    if (parts.size() != 3) {
      throw ConfigError("grid must be start:stop:step or a comma list");
    }
    auto start = ParseDouble(Trim(parts[0]));
    auto stop = ParseDouble(Trim(parts[1]));
    auto step = ParseDouble(Trim(parts[2]));
    if (!start || !stop || !step || *step <= 0.0 || *start > *stop) {
      throw ConfigError("grid must satisfy start <= stop and step > 0");
    }
    int n = static_cast<int>(std::floor((*stop - *start) / *step + 1e-9));
    for (int i = 0; i <= n; ++i) {
      // Snap to 9 decimals so grid points print as the decimals the user
      // wrote, not accumulated float noise.
      push(std::round((*start + i * *step) * 1e9) / 1e9);
    }
  } else {
    for (const std::string& part : Split(text, ',')) {
      auto value = ParseDouble(Trim(part));
      if (!value) {
        throw ConfigError("grid entry '" + part + "' is not a number");
      }
      push(*value);
    }
  }
  if (grid.empty()) {
    throw ConfigError("grid is empty");
  }
  return grid;
}

std::pair<std::string, std::string> SplitPair(const std::string& text,
                                              const char* what) {
  std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
    throw ConfigError(std::string(what) + " must look like relation=value, got '" +
                      text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

struct ScoredData {
  std::map<std::string, SentenceVector> vectors;  // after the worker floor
  FloorReport floor_report;
  ScoreTable table;
};

ScoredData ScoreJudgments(std::span<const Judgment> judgments,
                          const RelationSchema& schema, int floor) {
  ScoredData data;
  data.vectors = AggregateSentences(judgments, schema);
  data.floor_report = EnforceWorkerFloor(judgments, floor);
  for (const auto& [sentence_id, count] : data.floor_report.below) {
    data.vectors.erase(sentence_id);
  }
  data.table = ScoreAll(data.vectors, schema);
  return data;
}

std::vector<ExpertLabel> LabelsForRelation(std::span<const ExpertLabel> labels,
                                           const std::string& relation) {
  std::vector<ExpertLabel> out;
  for (const ExpertLabel& label : labels) {
    if (label.relation == relation) out.push_back(label);
  }
  return out;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
  BundlePaths paths;
};

int RunValidate(const ValidateArgs& args) {
  LoadResult result = LoadBundle(args.paths.schema, args.paths.sentences,
                                 args.paths.judgments, args.paths.expert);
  {
    auto out = OpenOutput(args.paths.out, "validation.csv");
    WriteValidationCsv(out, result.report);
  }
  {
    auto out = OpenOutput(args.paths.out, "validation.json");
    WriteValidationJson(out, result.report);
  }
  std::cout << "validation: " << result.report.ErrorCount() << " errors, "
            << result.report.WarningCount() << " warnings\n";
  return result.report.Accepted() ? kExitOk : kExitData;
}

// ---------------------------------------------------------------------------
// import

struct ImportArgs {
  std::string raw;
  std::string mapping;
  std::string schema;
  std::string out = ".";
};

int RunImport(const ImportArgs& args) {
  RelationSchema schema = LoadSchema(args.schema);
  ImportMapping mapping;
  if (!args.mapping.empty()) {
    std::ifstream in = OpenInput(args.mapping);
    mapping = ImportMapping::FromDoc(KeyValueDoc::Parse(in, args.mapping),
                                     args.mapping);
  }
  std::ifstream raw = OpenInput(args.raw);
  ImportResult result = ImportRawExport(raw, mapping, schema, args.raw);

  {
    auto out = OpenOutput(args.out, "sentences.csv");
    WriteSentences(out, result.sentences);
  }
  {
    auto out = OpenOutput(args.out, "judgments.csv");
    WriteJudgments(out, result.judgments);
  }
  {
    RunManifest manifest;
    manifest.parameters = {{"raw", args.raw}, {"mapping", args.mapping}};
    manifest.artifacts = {"sentences.csv", "judgments.csv"};
    manifest.summary = {
        {"sentences", std::to_string(result.sentences.size())},
        {"judgments", std::to_string(result.judgments.size())},
        {"warnings", std::to_string(result.warnings.size())}};
    for (const std::string& warning : result.warnings) {
      manifest.summary.emplace_back("warning", warning);
    }
    auto out = OpenOutput(args.out, "import.json");
    WriteRunManifestJson(out, manifest);
  }
  std::cout << "import: " << result.sentences.size() << " sentences, "
            << result.judgments.size() << " judgments, "
            << result.warnings.size() << " warnings\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// filter-workers

struct FilterArgs {
  BundlePaths paths;
  SpamFilterOptions options;
};

int RunFilterWorkers(const FilterArgs& args) {
  DatasetBundle bundle = LoadAccepted(args.paths);
  SpamFilterResult result =
      FilterSpamWorkers(bundle.judgments, bundle.schema, args.options);

  {
    auto out = OpenOutput(args.paths.out, "workers.csv");
    WriteWorkersCsv(out, result.metrics);
  }
  {
    auto out = OpenOutput(args.paths.out, "workers.json");
    WriteWorkersJson(out, result.metrics);
  }
  {
    auto out = OpenOutput(args.paths.out, "trusted.csv");
    WriteJudgments(out, result.trusted);
  }
  {
    FloorReport floor =
        EnforceWorkerFloor(result.trusted, args.options.worker_floor);
    auto out = OpenOutput(args.paths.out, "thin_sentences.csv");
    WriteThinSentencesCsv(out, floor);
  }
  {
    auto out = OpenOutput(args.paths.out, "filter.json");
    WriteFilterJson(out, result, args.options);
  }
  std::size_t flagged = 0;
  for (const WorkerMetrics& row : result.metrics) {
    if (row.spam_flag) ++flagged;
  }
  std::cout << "filter-workers: " << flagged << " of " << result.metrics.size()
            << " workers flagged in " << result.rounds << " rounds, "
            << result.trusted.size() << " trusted judgments\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// aggregate

struct AggregateArgs {
  std::string schema;
  std::string judgments;
  std::string out = ".";
};

int RunAggregate(const AggregateArgs& args) {
  RelationSchema schema = LoadSchema(args.schema);
  std::vector<Judgment> judgments = LoadJudgments(args.judgments, schema);
  auto vectors = AggregateSentences(judgments, schema);

  {
    auto out = OpenOutput(args.out, "vectors.csv");
    WriteVectorsCsv(out, vectors, schema);
  }
  {
    std::set<std::string> workers;
    for (const Judgment& j : judgments) workers.insert(j.worker_id);
    RunManifest manifest;
    manifest.parameters = {{"judgments", args.judgments}};
    manifest.artifacts = {"vectors.csv"};
    manifest.summary = {{"sentences", std::to_string(vectors.size())},
                        {"workers", std::to_string(workers.size())},
                        {"judgments", std::to_string(judgments.size())}};
    auto out = OpenOutput(args.out, "aggregate.json");
    WriteRunManifestJson(out, manifest);
  }
  std::cout << "aggregate: " << vectors.size() << " sentence vectors\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// score

struct ScoreArgs {
  std::string schema;
  std::string judgments;
  std::string out = ".";
  int floor = 10;
};

int RunScore(const ScoreArgs& args) {
  RelationSchema schema = LoadSchema(args.schema);
  std::vector<Judgment> judgments = LoadJudgments(args.judgments, schema);
  ScoredData data = ScoreJudgments(judgments, schema, args.floor);
  ClarityReport clarity = BuildClarityReport(data.table, data.vectors, schema);

  {
    auto out = OpenOutput(args.out, "scores.csv");
    WriteScoresCsv(out, data.table);
  }
  {
    auto out = OpenOutput(args.out, "thin_sentences.csv");
    WriteThinSentencesCsv(out, data.floor_report);
  }
  {
    auto out = OpenOutput(args.out, "clarity_sentences.csv");
    WriteClaritySentencesCsv(out, clarity);
  }
  {
    auto out = OpenOutput(args.out, "clarity_relations.csv");
    WriteClarityRelationsCsv(out, clarity);
  }
  {
    auto out = OpenOutput(args.out, "clarity.json");
    WriteClarityJson(out, clarity);
  }
  {
    RunManifest manifest;
    manifest.parameters = {{"judgments", args.judgments},
                           {"floor", std::to_string(args.floor)}};
    manifest.artifacts = {"scores.csv", "thin_sentences.csv",
                          "clarity_sentences.csv", "clarity_relations.csv",
                          "clarity.json"};
    manifest.summary = {
        {"scored_sentences", std::to_string(data.table.sentence_ids.size())},
        {"below_floor", std::to_string(data.floor_report.below.size())}};
    auto out = OpenOutput(args.out, "score.json");
    WriteRunManifestJson(out, manifest);
  }
  std::cout << "score: " << data.table.sentence_ids.size() << " sentences ("
            << data.floor_report.below.size() << " below the floor of "
            << args.floor << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// label

struct LabelArgs {
  BundlePaths paths;
  std::string provenance = "crowd";
  std::string relations = "seeds";
  double threshold = 0.5;
  std::uint64_t seed = 0;
  int floor = 10;
};

std::vector<std::string> ResolveRelations(const std::string& spec,
                                          const DatasetBundle& bundle) {
  std::vector<std::string> relations;
  if (spec == "seeds") {
    std::set<std::string> seeds;
    for (const auto& [sentence_id, sentence] : bundle.sentences) {
      if (bundle.schema.IsRelation(sentence.seed_relation)) {
        seeds.insert(sentence.seed_relation);
      }
    }
    relations.assign(seeds.begin(), seeds.end());
  } else if (spec == "all") {
    relations = bundle.schema.relations;
  } else {
    for (const std::string& part : Split(spec, ',')) {
      std::string relation(Trim(part));
      if (relation.empty()) continue;
      if (!bundle.schema.IsRelation(relation)) {
        throw ConfigError("'" + relation + "' is not a configured relation");
      }
      relations.push_back(relation);
    }
    if (relations.empty()) {
      throw ConfigError("no relations requested");
    }
  }
  if (relations.empty()) {
    throw ConfigError("no seed relations found; pass --relations explicitly");
  }
  return relations;
}

int RunLabel(const LabelArgs& args) {
  DatasetBundle bundle = LoadAccepted(args.paths);
  std::vector<std::string> relations = ResolveRelations(args.relations, bundle);

  Provenance provenance;
  if (args.provenance == "crowd") {
    provenance = Provenance::kCrowd;
  } else if (args.provenance == "baseline") {
    provenance = Provenance::kBaseline;
  } else if (args.provenance == "expert") {
    provenance = Provenance::kExpert;
  } else if (args.provenance == "single") {
    provenance = Provenance::kSingle;
  } else {
    throw ConfigError("provenance must be crowd, baseline, expert, or single");
  }
  if (provenance == Provenance::kCrowd &&
      (args.threshold == 0.0 || args.threshold == 1.0)) {
    std::cerr << "warning: threshold " << FormatDouble(args.threshold)
              << " is degenerate; every instance gets the same sign\n";
  }
  if (provenance == Provenance::kExpert && bundle.expert_labels.empty()) {
    throw DataError("expert provenance needs --expert labels");
  }

  std::optional<ScoredData> scored;
  if (provenance == Provenance::kCrowd) {
    scored = ScoreJudgments(bundle.judgments, bundle.schema, args.floor);
  }

  RunManifest manifest;
  manifest.parameters = {{"provenance", args.provenance},
                         {"threshold", FormatDouble(args.threshold)},
                         {"seed", std::to_string(args.seed)},
                         {"floor", std::to_string(args.floor)}};
  for (const std::string& relation : relations) {
    std::vector<TrainingInstance> instances;
    switch (provenance) {
      case Provenance::kCrowd:
        instances =
            BuildCrowdTrainingSet(scored->table, relation, args.threshold);
        break;
      case Provenance::kBaseline:
        instances =
            BuildBaselineTrainingSet(bundle.sentences, relation, bundle.schema);
        break;
      case Provenance::kExpert: {
        ExpertTrainingSet set = BuildExpertTrainingSet(
            bundle.sentences, bundle.expert_labels, relation, bundle.schema);
        instances = std::move(set.instances);
        manifest.summary.emplace_back(
            "missing_expert_" + relation,
            std::to_string(set.missing_expert.size()));
        break;
      }
      case Provenance::kSingle:
        instances = BuildSingleTrainingSet(bundle.judgments, relation,
                                           bundle.schema, args.seed);
        break;
    }
    std::string name = "training_" + args.provenance + "_" + relation + ".csv";
    auto out = OpenOutput(args.paths.out, name);
    WriteTrainingCsv(out, instances);
    manifest.artifacts.push_back(name);
    manifest.summary.emplace_back("instances_" + relation,
                                  std::to_string(instances.size()));
  }
  {
    auto out = OpenOutput(args.paths.out, "label.json");
    WriteRunManifestJson(out, manifest);
  }
  std::cout << "label: wrote " << relations.size() << " " << args.provenance
            << " training sets\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// agreement-sweep

struct SweepArgs {
  BundlePaths paths;
  std::string relation;
  std::string grid = "0.05:0.95:0.05";
  std::string gold;
  int floor = 10;
};

int RunAgreementSweep(const SweepArgs& args) {
  DatasetBundle bundle = LoadAccepted(args.paths);
  std::vector<double> grid = ParseGrid(args.grid);
  ScoredData data = ScoreJudgments(bundle.judgments, bundle.schema, args.floor);

  std::vector<std::pair<double, double>> points;
  double best_t = grid.front();
  double best_agreement = -1.0;
  for (double t : grid) {
    double agreement =
        CrowdExpertAgreement(data.table, bundle.expert_labels, args.relation, t);
    points.emplace_back(t, agreement);
    if (agreement > best_agreement) {
      best_agreement = agreement;
      best_t = t;
    }
  }
  {
    auto out =
        OpenOutput(args.paths.out, "agreement_" + args.relation + ".csv");
    WriteAgreementCsv(out, points);
  }
  {
    auto out =
        OpenOutput(args.paths.out, "agreement_" + args.relation + ".json");
    WriteAgreementJson(out, args.relation, points, best_t, best_agreement);
  }

  if (!args.gold.empty()) {
    std::ifstream in = OpenInput(args.gold);
    GoldMap gold = ParseGoldCsv(in, args.gold);
    ScoreMap srs = data.table.RelationScores(args.relation);
    std::vector<std::pair<double, MetricsReport>> sweep;
    for (double t : grid) {
      ScoreMap predicted;
      for (const auto& [sentence_id, positive] : gold) {
        auto it = srs.find(sentence_id);
        if (it == srs.end()) {
          throw DataError("gold sentence '" + sentence_id +
                          "' has no sentence-relation score");
        }
        predicted.emplace(sentence_id, ApplyThreshold(it->second, t));
      }
      sweep.emplace_back(t, AnnotationQuality(predicted, gold, &srs));
    }
    auto out = OpenOutput(args.paths.out, "sweep_" + args.relation + ".csv");
    WriteSweepCsv(out, sweep);
  }

  std::cout << "agreement-sweep: " << args.relation << " best t "
            << FormatDouble(best_t) << " (agreement "
            << FormatDouble(best_agreement) << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// build-gold

struct BuildGoldArgs {
  BundlePaths paths;
  std::string relation;
  double threshold = 0.5;
  std::string adjudications;
  int floor = 10;
};

int RunBuildGold(const BuildGoldArgs& args) {
  DatasetBundle bundle = LoadAccepted(args.paths);
  std::vector<AdjudicationRecord> adjudications;
  if (!args.adjudications.empty()) {
    std::ifstream in = OpenInput(args.adjudications);
    adjudications = ParseAdjudications(in, args.adjudications);
  }
  ScoredData data = ScoreJudgments(bundle.judgments, bundle.schema, args.floor);
  EvaluationSetResult result =
      BuildEvaluationSet(data.table, bundle.expert_labels, args.relation,
                         args.threshold, adjudications);

  if (!result.gold.has_value()) {
    auto out = OpenOutput(args.paths.out, "adjudication_queue.csv");
    WriteQueueCsv(out, result.queue);
    std::cout << "build-gold: " << result.queue.size()
              << " disagreements need adjudication; queue written to "
              << (fs::path(args.paths.out) / "adjudication_queue.csv").string()
              << "\n";
    return kExitData;
  }
  {
    auto out = OpenOutput(args.paths.out, "gold_" + args.relation + ".csv");
    WriteGoldCsv(out, *result.gold);
  }
  {
    auto out = OpenOutput(args.paths.out, "gold_" + args.relation + ".json");
    WriteGoldJson(out, args.relation, args.threshold, *result.gold);
  }
  std::cout << "build-gold: " << result.gold->labels.size() << " labels ("
            << result.gold->dropped_unresolved.size()
            << " dropped as unresolved)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// splits

struct SplitsArgs {
  BundlePaths paths;
  int k = 5;
  std::uint64_t seed = 0;
  bool stratified = false;
};

int RunSplits(const SplitsArgs& args) {
  DatasetBundle bundle = LoadAccepted(args.paths);
  if (bundle.expert_labels.empty()) {
    throw DataError("splits need expert labels to define the evaluated subset");
  }
  std::set<std::string> expert_ids;
  GoldMap strata;
  for (const ExpertLabel& label : bundle.expert_labels) {
    expert_ids.insert(label.sentence_id);
    strata.emplace(label.sentence_id, label.positive);
  }
  std::set<std::string> all_ids;
  for (const auto& [sentence_id, sentence] : bundle.sentences) {
    all_ids.insert(sentence_id);
  }
  SplitPlan plan = MakeSplits(expert_ids, all_ids, args.k, args.seed,
                              args.stratified ? &strata : nullptr);
  {
    auto out = OpenOutput(args.paths.out, "splits.csv");
    WriteSplitsCsv(out, plan);
  }
  {
    auto out = OpenOutput(args.paths.out, "splits.json");
    WriteSplitsJson(out, plan);
  }
  std::cout << "splits: " << plan.fold_of.size() << " evaluated sentences in "
            << args.k << " folds, " << plan.always_train.size()
            << " always-train\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// evaluate / weighted-eval

struct EvaluateArgs {
  std::string gold;
  std::string relation;
  std::vector<std::string> predictions;
  std::vector<std::int64_t> sizes;
  std::string splits;
  std::string scores;  // weighted-eval only
  std::string out = ".";
};

int RunEvaluate(const EvaluateArgs& args, bool weighted) {
  std::ifstream gold_in = OpenInput(args.gold);
  GoldMap gold = ParseGoldCsv(gold_in, args.gold);

  std::optional<SplitPlan> plan;
  if (!args.splits.empty()) {
    std::ifstream in = OpenInput(args.splits);
    plan = ParseSplitsCsv(in, args.splits);
  }
  std::optional<ScoreMap> srs;
  if (weighted) {
    std::ifstream in = OpenInput(args.scores);
    srs = ParseScoresCsv(in, args.relation, args.scores);
  }
  if (!args.sizes.empty() && args.sizes.size() != args.predictions.size()) {
    throw ConfigError("--sizes must list one training-set size per --predictions file");
  }

  std::vector<std::pair<std::int64_t, MetricsReport>> curve;
  FoldedEvaluation last;
  for (std::size_t i = 0; i < args.predictions.size(); ++i) {
    std::ifstream in = OpenInput(args.predictions[i]);
    std::vector<PredictionRecord> records =
        ParsePredictions(in, args.predictions[i]);
    ScoreMap predicted = PredictionScores(records, args.relation);
    last = EvaluatePredictions(predicted, gold,
                               srs.has_value() ? &*srs : nullptr,
                               plan.has_value() ? &*plan : nullptr);
    if (!args.sizes.empty()) {
      curve.emplace_back(args.sizes[i], last.pooled);
    }
  }

  {
    auto out =
        OpenOutput(args.out, "evaluation_" + args.relation + ".csv");
    WriteEvaluationCsv(out, last);
  }
  {
    auto out = OpenOutput(args.out, "report_" + args.relation + ".json");
    WriteEvaluationJson(out, args.relation, last);
  }
  if (curve.size() > 1) {
    auto out =
        OpenOutput(args.out, "learning_curve_" + args.relation + ".csv");
    WriteLearningCurveCsv(out, curve);
  }
  std::cout << (weighted ? "weighted-eval: " : "evaluate: ") << args.relation
            << " pooled F1 " << FormatDouble(last.pooled.f1);
  if (weighted) {
    std::cout << ", weighted F1 " << FormatDouble(last.pooled.weighted_f1);
  }
  std::cout << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// mcnemar

struct McnemarArgs {
  std::string gold;
  std::string relation;
  std::string first;
  std::string second;
  bool no_correction = false;
  std::string out = ".";
};

int RunMcnemar(const McnemarArgs& args) {
  std::ifstream gold_in = OpenInput(args.gold);
  GoldMap gold = ParseGoldCsv(gold_in, args.gold);

  auto load = [&](const std::string& path) {
    std::ifstream in = OpenInput(path);
    return PredictionScores(ParsePredictions(in, path), args.relation);
  };
  ScoreMap first = load(args.first);
  ScoreMap second = load(args.second);

  std::vector<std::pair<bool, bool>> correctness;
  std::vector<std::string> missing;
  for (const auto& [sentence_id, positive] : gold) {
    auto a = first.find(sentence_id);
    auto b = second.find(sentence_id);
    if (a == first.end() || b == second.end()) {
      missing.push_back(sentence_id);
      continue;
    }
    correctness.emplace_back((a->second >= 0.0) == positive,
                             (b->second >= 0.0) == positive);
  }
  if (!missing.empty()) {
    throw DataError("both systems must cover every gold sentence; missing '" +
                    missing.front() + "' and " +
                    std::to_string(missing.size() - 1) + " more");
  }
  McNemarResult result = McNemarTest(correctness, !args.no_correction);
  {
    auto out = OpenOutput(args.out, "mcnemar.json");
    WriteMcnemarJson(out, result);
  }
  std::cout << "mcnemar: b=" << result.b << " c=" << result.c << " chi2="
            << FormatDouble(result.chi_square) << " p="
            << FormatDouble(result.p_value) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// stability

struct StabilityArgs {
  std::string schema;
  std::string judgments;
  std::vector<std::string> gold;        // relation=path
  std::vector<std::string> thresholds;  // relation=value
  int k_max = 0;
  std::string out = ".";
};

int RunStability(const StabilityArgs& args) {
  RelationSchema schema = LoadSchema(args.schema);
  std::vector<Judgment> judgments = LoadJudgments(args.judgments, schema);

  int k_max = args.k_max;
  if (k_max <= 0) {
    std::map<std::string, int> counts;
    for (const Judgment& j : judgments) ++counts[j.sentence_id];
    for (const auto& [sentence_id, count] : counts) {
      k_max = std::max(k_max, count);
    }
  }
  if (k_max < 2) {
    throw DataError("stability needs sentences with at least two judgments");
  }

  StabilityCurve cosine = MeanCosineDeltaCurve(judgments, schema, k_max);
  {
    auto out = OpenOutput(args.out, "stability_cosine.csv");
    WriteStabilityCsv(out, cosine);
  }
  {
    auto out = OpenOutput(args.out, "stability_cosine.json");
    WriteStabilityJson(out, cosine);
  }

  if (!args.gold.empty()) {
    std::map<std::string, GoldMap> gold_per_relation;
    for (const std::string& entry : args.gold) {
      auto [relation, path] = SplitPair(entry, "--gold");
      std::ifstream in = OpenInput(path);
      gold_per_relation[relation] = ParseGoldCsv(in, path);
    }
    std::map<std::string, double> threshold_per_relation;
    for (const std::string& entry : args.thresholds) {
      auto [relation, value] = SplitPair(entry, "--t");
      auto t = ParseDouble(value);
      if (!t.has_value()) {
        throw ConfigError("threshold '" + value + "' is not a number");
      }
      threshold_per_relation[relation] = *t;
    }
    StabilityCurve f1 = QualityByWorkerCount(
        judgments, schema, gold_per_relation, threshold_per_relation, k_max);
    {
      auto out = OpenOutput(args.out, "stability_f1.csv");
      WriteStabilityCsv(out, f1);
    }
    {
      auto out = OpenOutput(args.out, "stability_f1.json");
      WriteStabilityJson(out, f1);
    }
  }
  std::cout << "stability: " << cosine.points.size()
            << " cosine-delta points up to k=" << k_max << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  SimConfig config;
  std::string schema;  // optional custom schema
  std::string out = ".";
};

int RunSimulate(SimulateArgs args) {
  if (!args.schema.empty()) {
    args.config.schema = LoadSchema(args.schema);
  }
  SimOutput sim = GenerateCorpus(args.config);

  {
    auto out = OpenOutput(args.out, "schema.cfg");
    WriteSchema(out, sim.bundle.schema);
  }
  {
    std::vector<Sentence> sentences;
    sentences.reserve(sim.bundle.sentences.size());
    for (const auto& [sentence_id, sentence] : sim.bundle.sentences) {
      sentences.push_back(sentence);
    }
    auto out = OpenOutput(args.out, "sentences.csv");
    WriteSentences(out, sentences);
  }
  {
    auto out = OpenOutput(args.out, "judgments.csv");
    WriteJudgments(out, sim.bundle.judgments);
  }
  {
    auto out = OpenOutput(args.out, "latent.json");
    WriteLatentJson(out, sim.truth, sim.bundle.schema);
  }
  {
    RunManifest manifest;
    manifest.parameters = {
        {"n_sentences", std::to_string(args.config.n_sentences)},
        {"n_workers", std::to_string(args.config.n_workers)},
        {"workers_per_sentence",
         std::to_string(args.config.workers_per_sentence)},
        {"clear_fraction", FormatDouble(args.config.clear_fraction)},
        {"reliability", FormatDouble(args.config.reliability)},
        {"spam_fraction", FormatDouble(args.config.spam_fraction)},
        {"seed", std::to_string(args.config.seed)}};
    manifest.artifacts = {"schema.cfg", "sentences.csv", "judgments.csv",
                          "latent.json"};
    manifest.summary = {
        {"judgments", std::to_string(sim.bundle.judgments.size())}};
    auto out = OpenOutput(args.out, "sim.json");
    WriteRunManifestJson(out, manifest);
  }
  std::cout << "simulate: " << sim.bundle.sentences.size() << " sentences, "
            << sim.bundle.judgments.size() << " judgments\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
  BundlePaths paths;
  std::string adjudications;
  std::string relations = "seeds";
  SpamFilterOptions filter;
  double threshold = 0.5;
  std::string grid = "0.05:0.95:0.05";
  std::uint64_t seed = 0;
  int k_max = 0;
};

int RunReport(const ReportArgs& args) {
  LoadResult loaded = LoadBundle(args.paths.schema, args.paths.sentences,
                                 args.paths.judgments, args.paths.expert);
  RunManifest manifest;
  manifest.parameters = {
      {"schema", args.paths.schema},
      {"sentences", args.paths.sentences},
      {"judgments", args.paths.judgments},
      {"expert", args.paths.expert},
      {"adjudications", args.adjudications},
      {"tau", FormatDouble(args.filter.tau)},
      {"worker_floor", std::to_string(args.filter.worker_floor)},
      {"threshold", FormatDouble(args.threshold)},
      {"grid", args.grid},
      {"seed", std::to_string(args.seed)},
  };

  {
    auto out = OpenOutput(args.paths.out, "validation.csv");
    WriteValidationCsv(out, loaded.report);
  }
  {
    auto out = OpenOutput(args.paths.out, "validation.json");
    WriteValidationJson(out, loaded.report);
  }
  manifest.artifacts = {"validation.csv", "validation.json"};
  if (!loaded.report.Accepted()) {
    std::cout << "report: dataset rejected with "
              << loaded.report.ErrorCount() << " validation errors\n";
    return kExitData;
  }
  DatasetBundle& bundle = loaded.bundle;

  std::vector<AdjudicationRecord> adjudications;
  if (!args.adjudications.empty()) {
    std::ifstream in = OpenInput(args.adjudications);
    adjudications = ParseAdjudications(in, args.adjudications);
  }

  // Worker filtering.
  SpamFilterResult filtered =
      FilterSpamWorkers(bundle.judgments, bundle.schema, args.filter);
  {
    auto out = OpenOutput(args.paths.out, "workers.csv");
    WriteWorkersCsv(out, filtered.metrics);
  }
  {
    auto out = OpenOutput(args.paths.out, "workers.json");
    WriteWorkersJson(out, filtered.metrics);
  }
  {
    auto out = OpenOutput(args.paths.out, "trusted.csv");
    WriteJudgments(out, filtered.trusted);
  }
  {
    auto out = OpenOutput(args.paths.out, "filter.json");
    WriteFilterJson(out, filtered, args.filter);
  }
  manifest.artifacts.insert(manifest.artifacts.end(),
                            {"workers.csv", "workers.json", "trusted.csv",
                             "filter.json"});

  // Aggregation and scoring over trusted judgments.
  auto all_vectors = AggregateSentences(filtered.trusted, bundle.schema);
  {
    auto out = OpenOutput(args.paths.out, "vectors.csv");
    WriteVectorsCsv(out, all_vectors, bundle.schema);
  }
  ScoredData data =
      ScoreJudgments(filtered.trusted, bundle.schema, args.filter.worker_floor);
  {
    auto out = OpenOutput(args.paths.out, "thin_sentences.csv");
    WriteThinSentencesCsv(out, data.floor_report);
  }
  {
    auto out = OpenOutput(args.paths.out, "scores.csv");
    WriteScoresCsv(out, data.table);
  }
  ClarityReport clarity =
      BuildClarityReport(data.table, data.vectors, bundle.schema);
  {
    auto out = OpenOutput(args.paths.out, "clarity_sentences.csv");
    WriteClaritySentencesCsv(out, clarity);
  }
  {
    auto out = OpenOutput(args.paths.out, "clarity_relations.csv");
    WriteClarityRelationsCsv(out, clarity);
  }
  {
    auto out = OpenOutput(args.paths.out, "clarity.json");
    WriteClarityJson(out, clarity);
  }
  manifest.artifacts.insert(manifest.artifacts.end(),
                            {"vectors.csv", "thin_sentences.csv", "scores.csv",
                             "clarity_sentences.csv", "clarity_relations.csv",
                             "clarity.json"});
  manifest.summary = {
      {"sentences", std::to_string(bundle.sentences.size())},
      {"judgments", std::to_string(bundle.judgments.size())},
      {"trusted_judgments", std::to_string(filtered.trusted.size())},
      {"filter_rounds", std::to_string(filtered.rounds)},
      {"scored_sentences", std::to_string(data.table.sentence_ids.size())},
  };

  std::vector<std::string> relations = ResolveRelations(args.relations, bundle);
  std::vector<double> grid = ParseGrid(args.grid);
  bool have_expert = !bundle.expert_labels.empty();

  std::vector<AdjudicationQueueEntry> pending;
  std::map<std::string, GoldMap> gold_per_relation;
  std::map<std::string, double> best_t_per_relation;

  for (const std::string& relation : relations) {
    {
      auto instances = BuildCrowdTrainingSet(data.table, relation, args.threshold);
      std::string name = "training_crowd_" + relation + ".csv";
      auto out = OpenOutput(args.paths.out, name);
      WriteTrainingCsv(out, instances);
      manifest.artifacts.push_back(name);
    }
    {
      auto instances =
          BuildBaselineTrainingSet(bundle.sentences, relation, bundle.schema);
      std::string name = "training_baseline_" + relation + ".csv";
      auto out = OpenOutput(args.paths.out, name);
      WriteTrainingCsv(out, instances);
      manifest.artifacts.push_back(name);
    }
    {
      auto instances = BuildSingleTrainingSet(filtered.trusted, relation,
                                              bundle.schema, args.seed);
      std::string name = "training_single_" + relation + ".csv";
      auto out = OpenOutput(args.paths.out, name);
      WriteTrainingCsv(out, instances);
      manifest.artifacts.push_back(name);
    }
    if (!have_expert) continue;

    {
      ExpertTrainingSet set = BuildExpertTrainingSet(
          bundle.sentences, bundle.expert_labels, relation, bundle.schema);
      std::string name = "training_expert_" + relation + ".csv";
      auto out = OpenOutput(args.paths.out, name);
      WriteTrainingCsv(out, set.instances);
      manifest.artifacts.push_back(name);
    }

    std::vector<ExpertLabel> labels =
        LabelsForRelation(bundle.expert_labels, relation);
    bool any_scored = false;
    for (const ExpertLabel& label : labels) {
      if (data.table.RowOf(label.sentence_id).has_value()) {
        any_scored = true;
        break;
      }
    }
    if (!any_scored) {
      manifest.summary.emplace_back("agreement_" + relation,
                                    "skipped: no scored expert sentences");
      continue;
    }

    std::vector<std::pair<double, double>> points;
    double best_t = grid.front();
    double best_agreement = -1.0;
    for (double t : grid) {
      double agreement =
          CrowdExpertAgreement(data.table, bundle.expert_labels, relation, t);
      points.emplace_back(t, agreement);
      if (agreement > best_agreement) {
        best_agreement = agreement;
        best_t = t;
      }
    }
    {
      std::string name = "agreement_" + relation + ".csv";
      auto out = OpenOutput(args.paths.out, name);
      WriteAgreementCsv(out, points);
      manifest.artifacts.push_back(name);
    }
    {
      std::string name = "agreement_" + relation + ".json";
      auto out = OpenOutput(args.paths.out, name);
      WriteAgreementJson(out, relation, points, best_t, best_agreement);
      manifest.artifacts.push_back(name);
    }
    best_t_per_relation[relation] = best_t;
    manifest.summary.emplace_back("best_t_" + relation, FormatDouble(best_t));

    EvaluationSetResult evaluation_set =
        BuildEvaluationSet(data.table, bundle.expert_labels, relation, best_t,
                           adjudications);
    if (!evaluation_set.gold.has_value()) {
      pending.insert(pending.end(), evaluation_set.queue.begin(),
                     evaluation_set.queue.end());
      manifest.summary.emplace_back(
          "gold_" + relation,
          "pending: " + std::to_string(evaluation_set.queue.size()) +
              " unadjudicated disagreements");
      continue;
    }
    {
      std::string name = "gold_" + relation + ".csv";
      auto out = OpenOutput(args.paths.out, name);
      WriteGoldCsv(out, *evaluation_set.gold);
      manifest.artifacts.push_back(name);
    }
    {
      std::string name = "gold_" + relation + ".json";
      auto out = OpenOutput(args.paths.out, name);
      WriteGoldJson(out, relation, best_t, *evaluation_set.gold);
      manifest.artifacts.push_back(name);
    }
    gold_per_relation[relation] = evaluation_set.gold->labels;

    ScoreMap srs = data.table.RelationScores(relation);
    std::vector<std::pair<double, MetricsReport>> sweep;
    for (double t : grid) {
      ScoreMap predicted;
      for (const auto& [sentence_id, positive] : evaluation_set.gold->labels) {
        predicted.emplace(sentence_id, ApplyThreshold(srs.at(sentence_id), t));
      }
      sweep.emplace_back(
          t, AnnotationQuality(predicted, evaluation_set.gold->labels, &srs));
    }
    {
      std::string name = "sweep_" + relation + ".csv";
      auto out = OpenOutput(args.paths.out, name);
      WriteSweepCsv(out, sweep);
      manifest.artifacts.push_back(name);
    }
  }

  if (!pending.empty()) {
    auto out = OpenOutput(args.paths.out, "adjudication_queue.csv");
    WriteQueueCsv(out, pending);
    manifest.artifacts.push_back("adjudication_queue.csv");
  }

  // Stability curves over the trusted pool.
  int k_max = args.k_max;
  if (k_max <= 0) {
    std::map<std::string, int> counts;
    for (const Judgment& j : filtered.trusted) ++counts[j.sentence_id];
    for (const auto& [sentence_id, count] : counts) {
      k_max = std::max(k_max, count);
    }
  }
  if (k_max >= 2) {
    StabilityCurve cosine =
        MeanCosineDeltaCurve(filtered.trusted, bundle.schema, k_max);
    {
      auto out = OpenOutput(args.paths.out, "stability_cosine.csv");
      WriteStabilityCsv(out, cosine);
      manifest.artifacts.push_back("stability_cosine.csv");
    }
    if (!gold_per_relation.empty()) {
      StabilityCurve f1 =
          QualityByWorkerCount(filtered.trusted, bundle.schema,
                               gold_per_relation, best_t_per_relation, k_max);
      auto out = OpenOutput(args.paths.out, "stability_f1.csv");
      WriteStabilityCsv(out, f1);
      manifest.artifacts.push_back("stability_f1.csv");
    }
  }

  manifest.summary.emplace_back("pending_adjudications",
                                std::to_string(pending.size()));
  {
    auto out = OpenOutput(args.paths.out, "report.json");
    WriteRunManifestJson(out, manifest);
  }
  std::cout << "report: " << manifest.artifacts.size() + 1
            << " artifacts written to " << args.paths.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "crowdrel: disagreement-aware processing of crowdsourced relation "
      "judgments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads (0 = hardware concurrency); results are "
                 "identical at any setting");

  int exit_code = kExitOk;
  auto wire = [&](CLI::App* cmd, auto runner) {
    cmd->callback([&, runner]() {
      SetThreadCount(threads);
      exit_code = runner();
    });
  };

  // validate
  auto validate_args = std::make_shared<ValidateArgs>();
  {
    auto* cmd = app.add_subcommand(
        "validate", "Check a dataset against every structural invariant");
    AddBundleOptions(cmd, validate_args->paths, true, false);
    wire(cmd, [validate_args] { return RunValidate(*validate_args); });
  }

  // import
  auto import_args = std::make_shared<ImportArgs>();
  {
    auto* cmd = app.add_subcommand(
        "import", "Convert a raw crowd platform export to canonical files");
    cmd->add_option("--raw", import_args->raw, "Raw export CSV")->required();
    cmd->add_option("--mapping", import_args->mapping,
                    "Column mapping file (defaults cover CrowdFlower-style "
                    "exports)");
    cmd->add_option("--schema", import_args->schema, "Relation schema file")
        ->required();
    cmd->add_option("--out", import_args->out, "Output directory");
    wire(cmd, [import_args] { return RunImport(*import_args); });
  }

  // filter-workers
  auto filter_args = std::make_shared<FilterArgs>();
  {
    auto* cmd = app.add_subcommand(
        "filter-workers", "Score workers and remove low-agreement spammers");
    AddBundleOptions(cmd, filter_args->paths, true, false);
    cmd->add_option("--tau", filter_args->options.tau,
                    "Agreement threshold for flagging (default 0.5)");
    cmd->add_option("--max-rounds", filter_args->options.max_rounds,
                    "Maximum filtering rounds (default 10)");
    cmd->add_option("--min-judgments",
                    filter_args->options.min_judgments_to_flag,
                    "Never flag workers with fewer judgments (default 3)");
    cmd->add_option("--floor", filter_args->options.worker_floor,
                    "Report sentences left with fewer trusted workers "
                    "(default 10)");
    wire(cmd, [filter_args] { return RunFilterWorkers(*filter_args); });
  }

  // aggregate
  auto aggregate_args = std::make_shared<AggregateArgs>();
  {
    auto* cmd = app.add_subcommand(
        "aggregate", "Sum judgments into per-sentence vectors");
    cmd->add_option("--schema", aggregate_args->schema, "Relation schema file")
        ->required();
    cmd->add_option("--judgments", aggregate_args->judgments,
                    "judgments.csv (typically trusted.csv)")
        ->required();
    cmd->add_option("--out", aggregate_args->out, "Output directory");
    wire(cmd, [aggregate_args] { return RunAggregate(*aggregate_args); });
  }

  // score
  auto score_args = std::make_shared<ScoreArgs>();
  {
    auto* cmd = app.add_subcommand(
        "score", "Compute sentence-relation scores and clarity reports");
    cmd->add_option("--schema", score_args->schema, "Relation schema file")
        ->required();
    cmd->add_option("--judgments", score_args->judgments,
                    "judgments.csv (typically trusted.csv)")
        ->required();
    cmd->add_option("--floor", score_args->floor,
                    "Exclude sentences with fewer workers (default 10; 0 "
                    "disables)");
    cmd->add_option("--out", score_args->out, "Output directory");
    wire(cmd, [score_args] { return RunScore(*score_args); });
  }

  // label
  auto label_args = std::make_shared<LabelArgs>();
  {
    auto* cmd = app.add_subcommand(
        "label", "Emit training sets with crowd, baseline, expert, or "
                 "single-worker labels");
    AddBundleOptions(cmd, label_args->paths, true, false);
    cmd->add_option("--provenance", label_args->provenance,
                    "crowd | baseline | expert | single")
        ->required();
    cmd->add_option("--relations", label_args->relations,
                    "Comma list, 'seeds' (default), or 'all'");
    cmd->add_option("--threshold", label_args->threshold,
                    "Crowd score threshold (default 0.5)");
    cmd->add_option("--seed", label_args->seed,
                    "Seed for the single-worker draw (default 0)");
    cmd->add_option("--floor", label_args->floor,
                    "Worker floor for crowd scoring (default 10)");
    wire(cmd, [label_args] { return RunLabel(*label_args); });
  }

  // agreement-sweep
  auto sweep_args = std::make_shared<SweepArgs>();
  {
    auto* cmd = app.add_subcommand(
        "agreement-sweep",
        "Sweep the score threshold against expert decisions");
    AddBundleOptions(cmd, sweep_args->paths, true, true);
    cmd->add_option("--relation", sweep_args->relation, "Relation to sweep")
        ->required();
    cmd->add_option("--grid", sweep_args->grid,
                    "start:stop:step or comma list (default 0.05:0.95:0.05)");
    cmd->add_option("--gold", sweep_args->gold,
                    "gold_<relation>.csv; adds a quality sweep");
    cmd->add_option("--floor", sweep_args->floor,
                    "Worker floor for scoring (default 10)");
    wire(cmd, [sweep_args] { return RunAgreementSweep(*sweep_args); });
  }

  // build-gold
  auto gold_args = std::make_shared<BuildGoldArgs>();
  {
    auto* cmd = app.add_subcommand(
        "build-gold",
        "Build evaluation labels; exports an adjudication queue when "
        "disagreements are unresolved");
    AddBundleOptions(cmd, gold_args->paths, true, true);
    cmd->add_option("--relation", gold_args->relation, "Relation")->required();
    cmd->add_option("--threshold", gold_args->threshold,
                    "Crowd score threshold (default 0.5)");
    cmd->add_option("--adjudications", gold_args->adjudications,
                    "adjudications.csv with resolved disagreements");
    cmd->add_option("--floor", gold_args->floor,
                    "Worker floor for scoring (default 10)");
    wire(cmd, [gold_args] { return RunBuildGold(*gold_args); });
  }

  // splits
  auto splits_args = std::make_shared<SplitsArgs>();
  {
    auto* cmd = app.add_subcommand(
        "splits", "Deal expert-labeled sentences into cross-validation folds");
    AddBundleOptions(cmd, splits_args->paths, true, true);
    cmd->add_option("--k", splits_args->k, "Fold count (default 5)");
    cmd->add_option("--seed", splits_args->seed, "Shuffle seed (default 0)");
    cmd->add_flag("--stratified", splits_args->stratified,
                  "Deal positives and negatives separately");
    wire(cmd, [splits_args] { return RunSplits(*splits_args); });
  }

  // evaluate
  auto evaluate_args = std::make_shared<EvaluateArgs>();
  {
    auto* cmd = app.add_subcommand(
        "evaluate", "Score predictions against gold labels");
    cmd->add_option("--gold", evaluate_args->gold, "gold_<relation>.csv")
        ->required();
    cmd->add_option("--relation", evaluate_args->relation, "Relation")
        ->required();
    cmd->add_option("--predictions", evaluate_args->predictions,
                    "predictions.csv (repeat with --sizes for a learning "
                    "curve)")
        ->required();
    cmd->add_option("--sizes", evaluate_args->sizes,
                    "Training-set size per predictions file");
    cmd->add_option("--splits", evaluate_args->splits, "splits.csv");
    cmd->add_option("--out", evaluate_args->out, "Output directory");
    wire(cmd, [evaluate_args] { return RunEvaluate(*evaluate_args, false); });
  }

  // weighted-eval
  auto weighted_args = std::make_shared<EvaluateArgs>();
  {
    auto* cmd = app.add_subcommand(
        "weighted-eval",
        "Score predictions with ambiguity-weighted metrics as well");
    cmd->add_option("--gold", weighted_args->gold, "gold_<relation>.csv")
        ->required();
    cmd->add_option("--relation", weighted_args->relation, "Relation")
        ->required();
    cmd->add_option("--predictions", weighted_args->predictions,
                    "predictions.csv (repeat with --sizes for a learning "
                    "curve)")
        ->required();
    cmd->add_option("--sizes", weighted_args->sizes,
                    "Training-set size per predictions file");
    cmd->add_option("--splits", weighted_args->splits, "splits.csv");
    cmd->add_option("--scores", weighted_args->scores,
                    "scores.csv with sentence-relation scores")
        ->required();
    cmd->add_option("--out", weighted_args->out, "Output directory");
    wire(cmd, [weighted_args] { return RunEvaluate(*weighted_args, true); });
  }

  // mcnemar
  auto mcnemar_args = std::make_shared<McnemarArgs>();
  {
    auto* cmd = app.add_subcommand(
        "mcnemar", "Paired McNemar test between two prediction files");
    cmd->add_option("--gold", mcnemar_args->gold, "gold_<relation>.csv")
        ->required();
    cmd->add_option("--relation", mcnemar_args->relation, "Relation")
        ->required();
    cmd->add_option("--a", mcnemar_args->first, "First predictions.csv")
        ->required();
    cmd->add_option("--b", mcnemar_args->second, "Second predictions.csv")
        ->required();
    cmd->add_flag("--no-correction", mcnemar_args->no_correction,
                  "Disable the continuity correction");
    cmd->add_option("--out", mcnemar_args->out, "Output directory");
    wire(cmd, [mcnemar_args] { return RunMcnemar(*mcnemar_args); });
  }

  // stability
  auto stability_args = std::make_shared<StabilityArgs>();
  {
    auto* cmd = app.add_subcommand(
        "stability", "Convergence curves as workers accumulate");
    cmd->add_option("--schema", stability_args->schema, "Relation schema file")
        ->required();
    cmd->add_option("--judgments", stability_args->judgments,
                    "judgments.csv (typically trusted.csv)")
        ->required();
    cmd->add_option("--gold", stability_args->gold,
                    "relation=gold.csv (repeatable; adds the F1 curve)");
    cmd->add_option("--t", stability_args->thresholds,
                    "relation=threshold (repeatable)");
    cmd->add_option("--k-max", stability_args->k_max,
                    "Largest worker count (default: observed maximum)");
    cmd->add_option("--out", stability_args->out, "Output directory");
    wire(cmd, [stability_args] { return RunStability(*stability_args); });
  }

  // simulate
  auto simulate_args = std::make_shared<SimulateArgs>();
  {
    auto* cmd = app.add_subcommand(
        "simulate", "Generate a synthetic corpus with known latent truth");
    cmd->add_option("--n-sentences", simulate_args->config.n_sentences,
                    "Sentences (default 50)");
    cmd->add_option("--n-workers", simulate_args->config.n_workers,
                    "Worker pool size (default 15)");
    cmd->add_option("--workers-per-sentence",
                    simulate_args->config.workers_per_sentence,
                    "Judgments per sentence (default 15)");
    cmd->add_option("--clear-fraction", simulate_args->config.clear_fraction,
                    "Fraction of single-relation sentences (default 1.0)");
    cmd->add_option("--reliability", simulate_args->config.reliability,
                    "Faithful worker reliability (default 0.9)");
    cmd->add_option("--spam-fraction", simulate_args->config.spam_fraction,
                    "Fraction of spam workers (default 0)");
    cmd->add_option("--seed", simulate_args->config.seed, "Seed (default 0)");
    cmd->add_option("--schema", simulate_args->schema,
                    "Schema file (default: built-in schema)");
    cmd->add_option("--out", simulate_args->out, "Output directory");
    wire(cmd, [simulate_args] { return RunSimulate(*simulate_args); });
  }

  // report
  auto report_args = std::make_shared<ReportArgs>();
  {
    auto* cmd = app.add_subcommand(
        "report", "Run the full pipeline and bundle every artifact");
    AddBundleOptions(cmd, report_args->paths, true, false);
    cmd->add_option("--adjudications", report_args->adjudications,
                    "adjudications.csv");
    cmd->add_option("--relations", report_args->relations,
                    "Comma list, 'seeds' (default), or 'all'");
    cmd->add_option("--tau", report_args->filter.tau,
                    "Spam filter threshold (default 0.5)");
    cmd->add_option("--max-rounds", report_args->filter.max_rounds,
                    "Spam filter rounds (default 10)");
    cmd->add_option("--floor", report_args->filter.worker_floor,
                    "Worker floor (default 10)");
    cmd->add_option("--threshold", report_args->threshold,
                    "Crowd training threshold (default 0.5)");
    cmd->add_option("--grid", report_args->grid,
                    "Sweep grid (default 0.05:0.95:0.05)");
    cmd->add_option("--seed", report_args->seed,
                    "Seed for the single-worker sets (default 0)");
    cmd->add_option("--k-max", report_args->k_max,
                    "Stability curve limit (default: observed maximum)");
    wire(cmd, [report_args] { return RunReport(*report_args); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const ConfigError& e) {
    EmitErrorJson("config", e.what());
    return kExitConfig;
  } catch (const ParseError& e) {
    EmitErrorJson("parse", e.what());
    return kExitData;
  } catch (const DataError& e) {
    EmitErrorJson("data", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    EmitErrorJson("internal", e.what());
    return kExitData;
  }
  return exit_code;
}
