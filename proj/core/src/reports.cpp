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

#include "crowdrel/reports.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>

#include "crowdrel/csv.hpp"
#include "crowdrel/errors.hpp"
#include "crowdrel/text.hpp"

namespace crowdrel {

namespace {

using OrderedJson = nlohmann::ordered_json;

void Dump(std::ostream& out, const OrderedJson& document) {
  out << document.dump(2) << '\n';
}

const char* SeverityName(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

OrderedJson MetricsToJson(const MetricsReport& report) {
  OrderedJson object;
  object["tp"] = report.counts.tp;
  object["fp"] = report.counts.fp;
  object["tn"] = report.counts.tn;
  object["fn"] = report.counts.fn;
  object["precision"] = report.precision;
  object["recall"] = report.recall;
  object["f1"] = report.f1;
  if (report.has_weighted) {
    object["weighted_precision"] = report.weighted_precision;
    object["weighted_recall"] = report.weighted_recall;
    object["weighted_f1"] = report.weighted_f1;
  }
  object["degenerate"] = report.degenerate;
  return object;
}

}  // namespace

void WriteValidationCsv(std::ostream& out, const ValidationReport& report) {
  CsvWriter writer(out);
  writer.Row({"severity", "code", "record", "message"});
  for (const ValidationIssue& issue : report.issues) {
    writer.Row({SeverityName(issue.severity), issue.code, issue.record,
                issue.message});
  }
}

void WriteValidationJson(std::ostream& out, const ValidationReport& report) {
  OrderedJson document;
  document["accepted"] = report.Accepted();
  document["error_count"] = report.ErrorCount();
  document["warning_count"] = report.WarningCount();
  OrderedJson issues = OrderedJson::array();
  for (const ValidationIssue& issue : report.issues) {
    OrderedJson object;
    object["severity"] = SeverityName(issue.severity);
    object["code"] = issue.code;
    object["record"] = issue.record;
    object["message"] = issue.message;
    issues.push_back(std::move(object));
  }
  document["issues"] = std::move(issues);
  Dump(out, document);
}

void WriteVectorsCsv(std::ostream& out,
                     const std::map<std::string, SentenceVector>& vectors,
                     const RelationSchema& schema) {
  CsvWriter writer(out);
  std::vector<std::string> header = {"sentence_id"};
  for (const std::string& option : schema.Options()) {
    header.push_back(option);
  }
  header.push_back("worker_count");
  writer.Row(header);

  for (const auto& [sentence_id, vector] : vectors) {
    std::vector<std::string> row = {sentence_id};
    for (std::int64_t component : vector.components) {
      row.push_back(std::to_string(component));
    }
    row.push_back(std::to_string(vector.worker_count));
    writer.Row(row);
  }
}

void WriteWorkersCsv(std::ostream& out,
                     std::span<const WorkerMetrics> metrics) {
  CsvWriter writer(out);
  writer.Row({"worker_id", "worker_sentence_agreement",
              "worker_worker_agreement", "judged_sentences", "spam_flag",
              "removal_round"});
  for (const WorkerMetrics& row : metrics) {
    writer.Row({row.worker_id, FormatDouble(row.worker_sentence_agreement),
                row.worker_worker_agreement.has_value()
                    ? FormatDouble(*row.worker_worker_agreement)
                    : std::string(),
                std::to_string(row.judged_sentences),
                row.spam_flag ? "1" : "0", std::to_string(row.removal_round)});
  }
}

void WriteWorkersJson(std::ostream& out,
                      std::span<const WorkerMetrics> metrics) {
  OrderedJson workers = OrderedJson::array();
  for (const WorkerMetrics& row : metrics) {
    OrderedJson object;
    object["worker_id"] = row.worker_id;
    object["worker_sentence_agreement"] = row.worker_sentence_agreement;
    if (row.worker_worker_agreement.has_value()) {
      object["worker_worker_agreement"] = *row.worker_worker_agreement;
    } else {
      object["worker_worker_agreement"] = nullptr;
    }
    object["judged_sentences"] = row.judged_sentences;
    object["spam_flag"] = row.spam_flag;
    object["removal_round"] = row.removal_round;
    workers.push_back(std::move(object));
  }
  OrderedJson document;
  document["workers"] = std::move(workers);
  Dump(out, document);
}

void WriteFilterJson(std::ostream& out, const SpamFilterResult& result,
                     const SpamFilterOptions& options) {
  std::size_t flagged = 0;
  for (const WorkerMetrics& row : result.metrics) {
    if (row.spam_flag) ++flagged;
  }
  OrderedJson document;
  document["tau"] = options.tau;
  document["max_rounds"] = options.max_rounds;
  document["min_judgments_to_flag"] = options.min_judgments_to_flag;
  document["worker_floor"] = options.worker_floor;
  document["rounds"] = result.rounds;
  document["workers_total"] = result.metrics.size();
  document["workers_flagged"] = flagged;
  document["trusted_judgments"] = result.trusted.size();
  document["thin_sentences"] = result.thin_sentences;
  Dump(out, document);
}

void WriteThinSentencesCsv(std::ostream& out, const FloorReport& report) {
  CsvWriter writer(out);
  writer.Row({"sentence_id", "trusted_workers"});
  for (const auto& [sentence_id, count] : report.below) {
    writer.Row({sentence_id, std::to_string(count)});
  }
}

void WriteScoresCsv(std::ostream& out, const ScoreTable& table) {
  CsvWriter writer(out);
  writer.Row({"sentence_id", "relation", "srs"});
  for (std::size_t row = 0; row < table.sentence_ids.size(); ++row) {
    for (std::size_t option = 0; option < table.options.size(); ++option) {
      writer.Row({table.sentence_ids[row], table.options[option],
                  FormatDouble(table.srs[row][option])});
    }
  }
}

ScoreMap ParseScoresCsv(std::istream& in, const std::string& relation,
                        const std::string& path) {
  CsvReader reader(in, path);
  auto header_row = reader.Next();
  if (!header_row.has_value() || header_row->size() < 3 ||
      (*header_row)[0] != "sentence_id" || (*header_row)[1] != "relation" ||
      (*header_row)[2] != "srs") {
    throw ParseError(path, 1, "expected scores header: sentence_id,relation,srs");
  }
  ScoreMap scores;
  while (auto row = reader.Next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    std::size_t line = reader.RecordLine();
    if (row->size() != 3) {
      throw ParseError(path, line, "expected sentence_id,relation,srs");
    }
    if ((*row)[1] != relation) continue;
    auto value = ParseDouble((*row)[2]);
    if (!value.has_value()) {
      throw ParseError(path, line, "srs must be a number, got '" + (*row)[2] + "'");
    }
    if (!scores.emplace((*row)[0], *value).second) {
      throw ParseError(path, line,
                       "duplicate score for sentence '" + (*row)[0] + "'");
    }
  }
  return scores;
}

void WriteClaritySentencesCsv(std::ostream& out, const ClarityReport& report) {
  CsvWriter writer(out);
  writer.Row({"sentence_id", "clarity"});
  for (const auto& [sentence_id, clarity] : report.sentence_clarity) {
    writer.Row({sentence_id, FormatDouble(clarity)});
  }
}

void WriteClarityRelationsCsv(std::ostream& out, const ClarityReport& report) {
  CsvWriter writer(out);
  writer.Row({"relation", "clarity"});
  for (const auto& [relation, clarity] : report.relation_clarity) {
    writer.Row({relation, clarity.has_value() ? FormatDouble(*clarity)
                                              : std::string()});
  }
}

void WriteClarityJson(std::ostream& out, const ClarityReport& report) {
  OrderedJson sentences;
  for (const auto& [sentence_id, clarity] : report.sentence_clarity) {
    sentences[sentence_id] = clarity;
  }
  OrderedJson relations;
  for (const auto& [relation, clarity] : report.relation_clarity) {
    if (clarity.has_value()) {
      relations[relation] = *clarity;
    } else {
      relations[relation] = nullptr;
    }
  }
  OrderedJson document;
  document["sentence_clarity"] = std::move(sentences);
  document["relation_clarity"] = std::move(relations);
  Dump(out, document);
}

void WriteTrainingCsv(std::ostream& out,
                      std::span<const TrainingInstance> instances) {
  CsvWriter writer(out);
  writer.Row({"sentence_id", "relation", "weight"});
  for (const TrainingInstance& instance : instances) {
    writer.Row({instance.sentence_id, instance.relation,
                FormatDouble(instance.weight)});
  }
}

void WriteQueueCsv(std::ostream& out,
                   std::span<const AdjudicationQueueEntry> queue) {
  CsvWriter writer(out);
  writer.Row({"sentence_id", "relation", "srs", "expert_decision"});
  for (const AdjudicationQueueEntry& entry : queue) {
    writer.Row({entry.sentence_id, entry.relation, FormatDouble(entry.srs),
                entry.expert_decision ? "1" : "0"});
  }
}

void WriteGoldCsv(std::ostream& out, const GoldLabels& gold) {
  CsvWriter writer(out);
  writer.Row({"sentence_id", "label"});
  for (const auto& [sentence_id, positive] : gold.labels) {
    writer.Row({sentence_id, positive ? "1" : "-1"});
  }
}

void WriteGoldJson(std::ostream& out, const std::string& relation, double t,
                   const GoldLabels& gold) {
  std::size_t positives = 0;
  for (const auto& [sentence_id, positive] : gold.labels) {
    if (positive) ++positives;
  }
  OrderedJson document;
  document["relation"] = relation;
  document["threshold"] = t;
  document["labels_total"] = gold.labels.size();
  document["positives"] = positives;
  document["negatives"] = gold.labels.size() - positives;
  document["dropped_unresolved"] = gold.dropped_unresolved;
  Dump(out, document);
}

GoldMap ParseGoldCsv(std::istream& in, const std::string& path) {
  CsvReader reader(in, path);
  auto header_row = reader.Next();
  if (!header_row.has_value()) {
    throw ParseError(path, 1, "missing header row");
  }
  std::size_t id_column = std::string::npos;
  std::size_t label_column = std::string::npos;
  for (std::size_t i = 0; i < header_row->size(); ++i) {
    if ((*header_row)[i] == "sentence_id") id_column = i;
    if ((*header_row)[i] == "label") label_column = i;
  }
  if (id_column == std::string::npos || label_column == std::string::npos) {
    throw ParseError(path, 1, "gold file needs sentence_id and label columns");
  }

  GoldMap gold;
  while (auto row = reader.Next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    std::size_t line = reader.RecordLine();
    if (row->size() <= std::max(id_column, label_column)) {
      throw ParseError(path, line, "row has too few fields");
    }
    const std::string& label = (*row)[label_column];
    bool positive;
    if (label == "1") {
      positive = true;
    } else if (label == "-1") {
      positive = false;
    } else {
      throw ParseError(path, line, "label must be 1 or -1, got '" + label + "'");
    }
    if (!gold.emplace((*row)[id_column], positive).second) {
      throw ParseError(path, line,
                       "duplicate gold label for sentence '" + (*row)[id_column] + "'");
    }
  }
  return gold;
}

void WriteAgreementCsv(std::ostream& out,
                       std::span<const std::pair<double, double>> points) {
  CsvWriter writer(out);
  writer.Row({"t", "agreement"});
  for (const auto& [t, agreement] : points) {
    writer.Row({FormatDouble(t), FormatDouble(agreement)});
  }
}

void WriteAgreementJson(std::ostream& out, const std::string& relation,
                        std::span<const std::pair<double, double>> points,
                        double best_t, double best_agreement) {
  OrderedJson array = OrderedJson::array();
  for (const auto& [t, agreement] : points) {
    OrderedJson object;
    object["t"] = t;
    object["agreement"] = agreement;
    array.push_back(std::move(object));
  }
  OrderedJson document;
  document["relation"] = relation;
  document["points"] = std::move(array);
  document["best_t"] = best_t;
  document["best_agreement"] = best_agreement;
  Dump(out, document);
}

void WriteSweepCsv(std::ostream& out,
                   std::span<const std::pair<double, MetricsReport>> points) {
  CsvWriter writer(out);
  writer.Row({"t", "precision", "recall", "f1", "weighted_precision",
              "weighted_recall", "weighted_f1"});
  for (const auto& [t, report] : points) {
    std::vector<std::string> row = {
        FormatDouble(t), FormatDouble(report.precision),
        FormatDouble(report.recall), FormatDouble(report.f1)};
    if (report.has_weighted) {
      row.push_back(FormatDouble(report.weighted_precision));
      row.push_back(FormatDouble(report.weighted_recall));
      row.push_back(FormatDouble(report.weighted_f1));
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    writer.Row(row);
  }
}

void WriteSplitsCsv(std::ostream& out, const SplitPlan& plan) {
  out << "# seed=" << plan.seed << " k=" << plan.k << '\n';
  CsvWriter writer(out);
  writer.Row({"sentence_id", "fold"});
  for (const auto& [sentence_id, fold] : plan.fold_of) {
    writer.Row({sentence_id, std::to_string(fold)});
  }
  for (const std::string& sentence_id : plan.always_train) {
    writer.Row({sentence_id, "train"});
  }
}

void WriteSplitsJson(std::ostream& out, const SplitPlan& plan) {
  OrderedJson folds;
  for (const auto& [sentence_id, fold] : plan.fold_of) {
    folds[sentence_id] = fold;
  }
  OrderedJson document;
  document["seed"] = plan.seed;
  document["k"] = plan.k;
  document["folds"] = std::move(folds);
  document["always_train"] = plan.always_train;
  Dump(out, document);
}

SplitPlan ParseSplitsCsv(std::istream& in, const std::string& path) {
  SplitPlan plan;
  // The seed/k comment is informational; fold structure is authoritative.
  if (in.peek() == '#') {
    std::string comment;
    std::getline(in, comment);
    for (const std::string& token : Split(comment, ' ')) {
      if (token.rfind("seed=", 0) == 0) {
        if (auto seed = ParseInt(token.substr(5)); seed && *seed >= 0) {
          plan.seed = static_cast<std::uint64_t>(*seed);
        }
      } else if (token.rfind("k=", 0) == 0) {
        if (auto k = ParseInt(token.substr(2)); k && *k > 0) {
          plan.k = static_cast<int>(*k);
        }
      }
    }
  }

  CsvReader reader(in, path);
  auto header_row = reader.Next();
  if (!header_row.has_value()) {
    throw ParseError(path, 1, "missing header row");
  }

  int max_fold = -1;
  while (auto row = reader.Next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    std::size_t line = reader.RecordLine();
    if (row->size() != 2) {
      throw ParseError(path, line, "expected sentence_id and fold");
    }
    const std::string& sentence_id = (*row)[0];
    const std::string& fold_field = (*row)[1];
    if (fold_field == "train") {
      plan.always_train.insert(sentence_id);
      continue;
    }
    auto fold = ParseInt(fold_field);
    if (!fold.has_value() || *fold < 0) {
      throw ParseError(path, line,
                       "fold must be a non-negative integer or 'train', got '" +
                           fold_field + "'");
    }
    plan.fold_of[sentence_id] = static_cast<int>(*fold);
    max_fold = std::max(max_fold, static_cast<int>(*fold));
  }
  if (plan.k <= max_fold) plan.k = max_fold + 1;
  return plan;
}

void WriteEvaluationCsv(std::ostream& out,
                        const FoldedEvaluation& evaluation) {
  CsvWriter writer(out);
  writer.Row({"fold", "tp", "fp", "tn", "fn", "precision", "recall", "f1",
              "weighted_precision", "weighted_recall", "weighted_f1"});
  auto emit = [&](const std::string& name, const MetricsReport& report) {
    std::vector<std::string> row = {
        name,
        std::to_string(report.counts.tp),
        std::to_string(report.counts.fp),
        std::to_string(report.counts.tn),
        std::to_string(report.counts.fn),
        FormatDouble(report.precision),
        FormatDouble(report.recall),
        FormatDouble(report.f1)};
    if (report.has_weighted) {
      row.push_back(FormatDouble(report.weighted_precision));
      row.push_back(FormatDouble(report.weighted_recall));
      row.push_back(FormatDouble(report.weighted_f1));
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    writer.Row(row);
  };
  for (std::size_t i = 0; i < evaluation.per_fold.size(); ++i) {
    emit(std::to_string(i), evaluation.per_fold[i]);
  }
  emit("mean", evaluation.mean);
  emit("pooled", evaluation.pooled);
}

void WriteEvaluationJson(std::ostream& out, const std::string& relation,
                         const FoldedEvaluation& evaluation) {
  OrderedJson folds = OrderedJson::array();
  for (const MetricsReport& fold : evaluation.per_fold) {
    folds.push_back(MetricsToJson(fold));
  }
  OrderedJson document;
  document["relation"] = relation;
  document["folds"] = std::move(folds);
  document["mean"] = MetricsToJson(evaluation.mean);
  document["pooled"] = MetricsToJson(evaluation.pooled);
  Dump(out, document);
}

void WriteLearningCurveCsv(
    std::ostream& out,
    std::span<const std::pair<std::int64_t, MetricsReport>> points) {
  CsvWriter writer(out);
  writer.Row({"train_size", "precision", "recall", "f1", "weighted_precision",
              "weighted_recall", "weighted_f1"});
  for (const auto& [size, report] : points) {
    std::vector<std::string> row = {
        std::to_string(size), FormatDouble(report.precision),
        FormatDouble(report.recall), FormatDouble(report.f1)};
    if (report.has_weighted) {
      row.push_back(FormatDouble(report.weighted_precision));
      row.push_back(FormatDouble(report.weighted_recall));
      row.push_back(FormatDouble(report.weighted_f1));
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    writer.Row(row);
  }
}

void WriteMcnemarJson(std::ostream& out, const McNemarResult& result) {
  OrderedJson document;
  document["b"] = result.b;
  document["c"] = result.c;
  document["chi_square"] = result.chi_square;
  document["p_value"] = result.p_value;
  document["continuity_correction"] = result.continuity_correction;
  document["degenerate"] = result.degenerate;
  Dump(out, document);
}

void WriteStabilityCsv(std::ostream& out, const StabilityCurve& curve) {
  CsvWriter writer(out);
  writer.Row({"k", "value", "contributing_sentences"});
  for (const StabilityPoint& point : curve.points) {
    writer.Row({std::to_string(point.k), FormatDouble(point.value),
                std::to_string(point.contributing)});
  }
}

void WriteStabilityJson(std::ostream& out, const StabilityCurve& curve) {
  OrderedJson points = OrderedJson::array();
  for (const StabilityPoint& point : curve.points) {
    OrderedJson object;
    object["k"] = point.k;
    object["value"] = point.value;
    object["contributing_sentences"] = point.contributing;
    points.push_back(std::move(object));
  }
  OrderedJson document;
  document["kind"] = curve.kind == CurveKind::kCosineDelta ? "cosine_delta"
                                                           : "annotation_f1";
  document["points"] = std::move(points);
  Dump(out, document);
}

void WriteLatentJson(std::ostream& out, const LatentTruth& truth,
                     const RelationSchema& schema) {
  OrderedJson workers = OrderedJson::array();
  for (const LatentWorker& worker : truth.workers) {
    OrderedJson object;
    object["worker_id"] = worker.worker_id;
    object["spam"] = worker.spam;
    object["reliability"] = worker.reliability;
    workers.push_back(std::move(object));
  }
  OrderedJson sentences = OrderedJson::array();
  for (const LatentSentence& sentence : truth.sentences) {
    OrderedJson probs;
    for (std::size_t i = 0; i < schema.relations.size(); ++i) {
      if (sentence.relation_probs[i] != 0.0) {
        probs[schema.relations[i]] = sentence.relation_probs[i];
      }
    }
    OrderedJson object;
    object["sentence_id"] = sentence.sentence_id;
    object["primary"] = sentence.primary;
    if (sentence.secondary.has_value()) {
      object["secondary"] = *sentence.secondary;
    } else {
      object["secondary"] = nullptr;
    }
    object["relation_probs"] = std::move(probs);
    sentences.push_back(std::move(object));
  }
  OrderedJson document;
  document["workers"] = std::move(workers);
  document["sentences"] = std::move(sentences);
  Dump(out, document);
}

void WriteRunManifestJson(std::ostream& out, const RunManifest& manifest) {
  OrderedJson parameters;
  for (const auto& [key, value] : manifest.parameters) {
    parameters[key] = value;
  }
  OrderedJson summary;
  for (const auto& [key, value] : manifest.summary) {
    summary[key] = value;
  }
  OrderedJson document;
  document["parameters"] = std::move(parameters);
  document["artifacts"] = manifest.artifacts;
  document["summary"] = std::move(summary);
  Dump(out, document);
}

}  // namespace crowdrel
