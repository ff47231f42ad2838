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

#include "crowdrel/scoring.hpp"

#include <algorithm>

#include "crowdrel/errors.hpp"
#include "crowdrel/parallel.hpp"
#include "crowdrel/rng.hpp"

namespace crowdrel {

std::optional<std::size_t> ScoreTable::RowOf(
    const std::string& sentence_id) const {
  auto it = std::lower_bound(sentence_ids.begin(), sentence_ids.end(),
                             sentence_id);
  if (it == sentence_ids.end() || *it != sentence_id) return std::nullopt;
  return static_cast<std::size_t>(it - sentence_ids.begin());
}

std::optional<std::size_t> ScoreTable::ColumnOf(
    const std::string& option) const {
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (options[i] == option) return i;
  }
  return std::nullopt;
}

std::optional<double> ScoreTable::At(const std::string& sentence_id,
                                     const std::string& option) const {
  auto row = RowOf(sentence_id);
  auto column = ColumnOf(option);
  if (!row.has_value() || !column.has_value()) return std::nullopt;
  return srs[*row][*column];
}

std::map<std::string, double> ScoreTable::RelationScores(
    const std::string& option) const {
  auto column = ColumnOf(option);
  if (!column.has_value()) {
    throw ConfigError("'" + option + "' is not an option of this score table");
  }
  std::map<std::string, double> out;
  for (std::size_t row = 0; row < sentence_ids.size(); ++row) {
    out.emplace(sentence_ids[row], srs[row][*column]);
  }
  return out;
}

double SentenceRelationScore(const SentenceVector& vector,
                             std::size_t option_index) {
  return UnitCosine(vector, option_index);
}

ScoreTable ScoreAll(const std::map<std::string, SentenceVector>& vectors,
                    const RelationSchema& schema) {
  ScoreTable table;
  table.options = schema.Options();
  table.sentence_ids.reserve(vectors.size());
  std::vector<const SentenceVector*> rows;
  rows.reserve(vectors.size());
  for (const auto& [sentence_id, vector] : vectors) {
    table.sentence_ids.push_back(sentence_id);
    rows.push_back(&vector);
  }

  table.srs.assign(rows.size(), {});
  ParallelFor(rows.size(), [&](std::size_t row) {
    const SentenceVector& vector = *rows[row];
    std::vector<double> scores(table.options.size(), 0.0);
    if (!vector.IsZero()) {
      for (std::size_t option = 0; option < scores.size(); ++option) {
        scores[option] = SentenceRelationScore(vector, option);
      }
    }
    table.srs[row] = std::move(scores);
  });

  for (std::size_t row = 0; row < rows.size(); ++row) {
    if (rows[row]->IsZero()) {
      table.zero_vector_sentences.push_back(table.sentence_ids[row]);
    }
  }
  return table;
}

double ApplyThreshold(double srs, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ConfigError("threshold must lie in [0, 1]");
  }
  return srs >= t ? srs : srs - 1.0;
}

std::string ProvenanceName(Provenance provenance) {
  switch (provenance) {
    case Provenance::kCrowd:
      return "crowd";
    case Provenance::kBaseline:
      return "baseline";
    case Provenance::kExpert:
      return "expert";
    case Provenance::kSingle:
      return "single";
  }
  throw ConfigError("unknown provenance");
}

std::vector<TrainingInstance> BuildCrowdTrainingSet(const ScoreTable& scores,
                                                    const std::string& relation,
                                                    double t) {
  auto column = scores.ColumnOf(relation);
  if (!column.has_value()) {
    throw ConfigError("'" + relation + "' is not an option of this score table");
  }
  std::vector<TrainingInstance> out;
  out.reserve(scores.sentence_ids.size());
  for (std::size_t row = 0; row < scores.sentence_ids.size(); ++row) {
    out.push_back(TrainingInstance{scores.sentence_ids[row], relation,
                                   ApplyThreshold(scores.srs[row][*column], t),
                                   Provenance::kCrowd});
  }
  return out;
}

namespace {

bool SeedExcluded(const RelationSchema& schema, const std::string& relation,
                  const std::string& seed) {
  auto it = schema.overlap_exclusions.find(relation);
  return it != schema.overlap_exclusions.end() && it->second.count(seed) > 0;
}

}  // namespace

std::vector<TrainingInstance> BuildBaselineTrainingSet(
    const std::map<std::string, Sentence>& sentences,
    const std::string& relation, const RelationSchema& schema) {
  if (!schema.IsRelation(relation)) {
    throw ConfigError("'" + relation + "' is not a configured relation");
  }
  std::vector<TrainingInstance> out;
  for (const auto& [sentence_id, sentence] : sentences) {
    if (sentence.seed_relation == relation) {
      out.push_back(TrainingInstance{sentence_id, relation, 1.0,
                                     Provenance::kBaseline});
    } else if (!SeedExcluded(schema, relation, sentence.seed_relation)) {
      out.push_back(TrainingInstance{sentence_id, relation, -1.0,
                                     Provenance::kBaseline});
    }
  }
  return out;
}

ExpertTrainingSet BuildExpertTrainingSet(
    const std::map<std::string, Sentence>& sentences,
    std::span<const ExpertLabel> expert, const std::string& relation,
    const RelationSchema& schema) {
  if (!schema.IsRelation(relation)) {
    throw ConfigError("'" + relation + "' is not a configured relation");
  }
  std::map<std::string, const ExpertLabel*> by_sentence;
  for (const ExpertLabel& label : expert) {
    by_sentence.emplace(label.sentence_id, &label);
  }

  ExpertTrainingSet result;
  for (const auto& [sentence_id, sentence] : sentences) {
    auto it = by_sentence.find(sentence_id);
    if (it == by_sentence.end()) {
      result.missing_expert.push_back(sentence_id);
      continue;
    }
    const ExpertLabel& label = *it->second;
    if (sentence.seed_relation == relation) {
      result.instances.push_back(TrainingInstance{
          sentence_id, relation, label.positive ? 1.0 : -1.0,
          Provenance::kExpert});
    } else if (label.positive &&
               !SeedExcluded(schema, relation, sentence.seed_relation)) {
      // A confirmed positive for another relation is evidence the sentence
      // expresses that relation, not this one.
      result.instances.push_back(
          TrainingInstance{sentence_id, relation, -1.0, Provenance::kExpert});
    }
  }
  return result;
}

std::vector<TrainingInstance> BuildSingleTrainingSet(
    std::span<const Judgment> trusted, const std::string& relation,
    const RelationSchema& schema, std::uint64_t seed) {
  if (!schema.OptionIndex(relation).has_value()) {
    throw ConfigError("'" + relation + "' is not a schema option");
  }
  std::map<std::string, std::vector<const Judgment*>> by_sentence;
  for (const Judgment& j : trusted) {
    by_sentence[j.sentence_id].push_back(&j);
  }

  std::vector<TrainingInstance> out;
  out.reserve(by_sentence.size());
  for (auto& [sentence_id, group] : by_sentence) {
    // Canonical order first, so the draw does not depend on input order.
    std::sort(group.begin(), group.end(),
              [](const Judgment* a, const Judgment* b) {
                if (a->submission_index != b->submission_index) {
                  return a->submission_index < b->submission_index;
                }
                return a->worker_id < b->worker_id;
              });
    auto stream = rng::CellStream(seed, "single_worker",
                                  rng::HashString(sentence_id));
    const Judgment& pick = *group[stream.NextBelow(group.size())];
    bool positive = std::binary_search(pick.selections.begin(),
                                       pick.selections.end(), relation);
    out.push_back(TrainingInstance{sentence_id, relation,
                                   positive ? 1.0 : -1.0, Provenance::kSingle});
  }
  return out;
}

double CrowdExpertAgreement(const ScoreTable& scores,
                            std::span<const ExpertLabel> expert,
                            const std::string& relation, double t) {
  auto column = scores.ColumnOf(relation);
  if (!column.has_value()) {
    throw ConfigError("'" + relation + "' is not an option of this score table");
  }
  std::int64_t considered = 0;
  std::int64_t matches = 0;
  for (const ExpertLabel& label : expert) {
    if (label.relation != relation) continue;
    auto row = scores.RowOf(label.sentence_id);
    if (!row.has_value()) continue;
    bool crowd_positive = ApplyThreshold(scores.srs[*row][*column], t) >= 0.0;
    ++considered;
    if (crowd_positive == label.positive) ++matches;
  }
  if (considered == 0) {
    throw DataError("no expert-labeled sentences for relation '" + relation +
                    "' appear in the score table");
  }
  return static_cast<double>(matches) / static_cast<double>(considered);
}

EvaluationSetResult BuildEvaluationSet(
    const ScoreTable& scores, std::span<const ExpertLabel> expert,
    const std::string& relation, double t,
    std::span<const AdjudicationRecord> adjudications) {
  auto column = scores.ColumnOf(relation);
  if (!column.has_value()) {
    throw ConfigError("'" + relation + "' is not an option of this score table");
  }
  std::map<std::string, Resolution> resolved;
  for (const AdjudicationRecord& record : adjudications) {
    if (record.relation != relation) continue;
    resolved.emplace(record.sentence_id, record.resolution);
  }

  GoldLabels gold;
  EvaluationSetResult result;
  for (const ExpertLabel& label : expert) {
    if (label.relation != relation) continue;
    auto row = scores.RowOf(label.sentence_id);
    if (!row.has_value()) continue;
    double srs = scores.srs[*row][*column];
    bool crowd_positive = ApplyThreshold(srs, t) >= 0.0;
    if (crowd_positive == label.positive) {
      gold.labels.emplace(label.sentence_id, label.positive);
      continue;
    }
    auto it = resolved.find(label.sentence_id);
    if (it == resolved.end()) {
      result.queue.push_back(AdjudicationQueueEntry{label.sentence_id, relation,
                                                    srs, label.positive});
    } else if (it->second == Resolution::kPositive) {
      gold.labels.emplace(label.sentence_id, true);
    } else if (it->second == Resolution::kNegative) {
      gold.labels.emplace(label.sentence_id, false);
    } else {
      gold.dropped_unresolved.push_back(label.sentence_id);
    }
  }
  if (result.queue.empty()) {
    result.gold = std::move(gold);
  }
  return result;
}

ClarityReport BuildClarityReport(
    const ScoreTable& scores,
    const std::map<std::string, SentenceVector>& vectors,
    const RelationSchema& schema) {
  ClarityReport report;
  std::size_t relation_count = schema.relations.size();

  for (std::size_t row = 0; row < scores.sentence_ids.size(); ++row) {
    double best = 0.0;
    for (std::size_t option = 0; option < relation_count; ++option) {
      best = std::max(best, scores.srs[row][option]);
    }
    report.sentence_clarity.emplace(scores.sentence_ids[row], best);
  }

  for (std::size_t option = 0; option < relation_count; ++option) {
    const std::string& relation = schema.relations[option];
    double sum = 0.0;
    std::int64_t voted = 0;
    for (std::size_t row = 0; row < scores.sentence_ids.size(); ++row) {
      auto it = vectors.find(scores.sentence_ids[row]);
      if (it == vectors.end() || it->second.components[option] == 0) continue;
      sum += scores.srs[row][option];
      ++voted;
    }
    report.relation_clarity.emplace(
        relation, voted > 0 ? std::optional<double>(sum / voted) : std::nullopt);
  }
  return report;
}

}  // namespace crowdrel
