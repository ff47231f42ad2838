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

#include "crowdrel/stability.hpp"

#include <algorithm>

#include "crowdrel/errors.hpp"
#include "crowdrel/parallel.hpp"
#include "crowdrel/scoring.hpp"

namespace crowdrel {

namespace {

std::vector<const Judgment*> SortedGroup(
    std::vector<const Judgment*> group) {
  std::sort(group.begin(), group.end(),
            [](const Judgment* a, const Judgment* b) {
              if (a->submission_index != b->submission_index) {
                return a->submission_index < b->submission_index;
              }
              return a->worker_id < b->worker_id;
            });
  return group;
}

std::map<std::string, std::vector<const Judgment*>> GroupBySentence(
    std::span<const Judgment> judgments) {
  std::map<std::string, std::vector<const Judgment*>> groups;
  for (const Judgment& j : judgments) {
    groups[j.sentence_id].push_back(&j);
  }
  for (auto& [sentence_id, group] : groups) {
    group = SortedGroup(std::move(group));
  }
  return groups;
}

std::vector<SentenceVector> PrefixVectors(
    const std::vector<const Judgment*>& group, const RelationSchema& schema) {
  std::vector<SentenceVector> prefixes;
  prefixes.reserve(group.size());
  SentenceVector current{std::vector<std::int64_t>(schema.Dimension(), 0), 0};
  for (const Judgment* j : group) {
    AnnotationVector row = MakeAnnotationVector(*j, schema);
    for (std::size_t i = 0; i < row.components.size(); ++i) {
      current.components[i] += row.components[i];
    }
    current.worker_count += 1;
    prefixes.push_back(current);
  }
  return prefixes;
}

}  // namespace

std::vector<SentenceVector> IncrementalVectors(
    std::span<const Judgment> judgments, const RelationSchema& schema) {
  std::vector<const Judgment*> group;
  group.reserve(judgments.size());
  for (const Judgment& j : judgments) {
    group.push_back(&j);
  }
  return PrefixVectors(SortedGroup(std::move(group)), schema);
}

StabilityCurve MeanCosineDeltaCurve(std::span<const Judgment> judgments,
                                    const RelationSchema& schema, int k_max) {
  if (k_max < 2) {
    throw ConfigError("cosine delta curve needs k_max of at least 2");
  }
  auto groups = GroupBySentence(judgments);
  std::vector<const std::vector<const Judgment*>*> ordered;
  ordered.reserve(groups.size());
  for (const auto& [sentence_id, group] : groups) {
    ordered.push_back(&group);
  }

  // deltas[s][k - 2] = 1 - cos(V_{k-1}, V_k) for sentence s, when defined.
  std::vector<std::vector<double>> deltas(ordered.size());
  ParallelFor(ordered.size(), [&](std::size_t s) {
    const auto& group = *ordered[s];
    std::vector<SentenceVector> prefixes = PrefixVectors(group, schema);
    std::size_t top = std::min<std::size_t>(prefixes.size(),
                                            static_cast<std::size_t>(k_max));
    std::vector<double> row;
    for (std::size_t k = 2; k <= top; ++k) {
      row.push_back(1.0 - Cosine(prefixes[k - 2].components,
                                 prefixes[k - 1].components));
    }
    deltas[s] = std::move(row);
  });

  StabilityCurve curve;
  curve.kind = CurveKind::kCosineDelta;
  for (int k = 2; k <= k_max; ++k) {
    double sum = 0.0;
    std::int64_t contributing = 0;
    for (const auto& row : deltas) {
      std::size_t index = static_cast<std::size_t>(k - 2);
      if (index < row.size()) {
        sum += row[index];
        ++contributing;
      }
    }
    if (contributing > 0) {
      curve.points.push_back(
          StabilityPoint{k, sum / static_cast<double>(contributing),
                         contributing});
    }
  }
  return curve;
}

StabilityCurve QualityByWorkerCount(
    std::span<const Judgment> judgments, const RelationSchema& schema,
    const std::map<std::string, GoldMap>& gold_per_relation,
    const std::map<std::string, double>& threshold_per_relation, int k_max) {
  if (k_max < 1) {
    throw ConfigError("quality curve needs k_max of at least 1");
  }
  for (const auto& [relation, gold] : gold_per_relation) {
    if (threshold_per_relation.find(relation) == threshold_per_relation.end()) {
      throw ConfigError("no threshold configured for relation '" + relation + "'");
    }
    if (!schema.IsRelation(relation)) {
      throw ConfigError("'" + relation + "' is not a configured relation");
    }
    (void)gold;
  }

  auto groups = GroupBySentence(judgments);
  std::vector<std::string> sentence_ids;
  std::vector<const std::vector<const Judgment*>*> ordered;
  sentence_ids.reserve(groups.size());
  for (const auto& [sentence_id, group] : groups) {
    sentence_ids.push_back(sentence_id);
    ordered.push_back(&group);
  }
  std::vector<std::vector<SentenceVector>> prefixes(ordered.size());
  ParallelFor(ordered.size(), [&](std::size_t s) {
    prefixes[s] = PrefixVectors(*ordered[s], schema);
  });

  StabilityCurve curve;
  curve.kind = CurveKind::kAnnotationF1;
  for (int k = 1; k <= k_max; ++k) {
    // Vectors capped at the first k judgments of each sentence.
    std::map<std::string, SentenceVector> capped;
    for (std::size_t s = 0; s < sentence_ids.size(); ++s) {
      std::size_t top = std::min<std::size_t>(
          prefixes[s].size(), static_cast<std::size_t>(k));
      capped.emplace(sentence_ids[s], prefixes[s][top - 1]);
    }
    ScoreTable table = ScoreAll(capped, schema);

    std::vector<MetricsReport> per_relation;
    for (const auto& [relation, gold] : gold_per_relation) {
      double t = threshold_per_relation.at(relation);
      ScoreMap predicted;
      GoldMap covered;
      for (const auto& [sentence_id, positive] : gold) {
        auto srs = table.At(sentence_id, relation);
        if (!srs.has_value()) continue;
        predicted.emplace(sentence_id, ApplyThreshold(*srs, t));
        covered.emplace(sentence_id, positive);
      }
      if (covered.empty()) continue;
      per_relation.push_back(MetricsFromCounts(Confusion(predicted, covered)));
    }
    if (per_relation.empty()) continue;
    MetricsReport pooled = MicroAverage(per_relation);
    curve.points.push_back(
        StabilityPoint{k, pooled.f1, pooled.counts.Total()});
  }
  return curve;
}

}  // namespace crowdrel
