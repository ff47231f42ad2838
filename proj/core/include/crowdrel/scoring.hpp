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

#ifndef CROWDREL_SCORING_HPP_
#define CROWDREL_SCORING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crowdrel/schema.hpp"
#include "crowdrel/vectors.hpp"

namespace crowdrel {

// Sentence-relation scores for every (sentence, option) pair: the cosine
// between the sentence vector and the option's unit axis, i.e. how much of
// the crowd's signal points at that option. Rows are ordered by sentence id.
struct ScoreTable {
  std::vector<std::string> options;       // schema option order
  std::vector<std::string> sentence_ids;  // ascending
  std::vector<std::vector<double>> srs;   // [sentence][option]
  // Defensive: sentences whose vector was all zeros (score 0 everywhere).
  std::vector<std::string> zero_vector_sentences;

  std::optional<std::size_t> RowOf(const std::string& sentence_id) const;
  std::optional<std::size_t> ColumnOf(const std::string& option) const;
  std::optional<double> At(const std::string& sentence_id,
                           const std::string& option) const;

  // srs of one option for every sentence that has a row.
  std::map<std::string, double> RelationScores(const std::string& option) const;
};

double SentenceRelationScore(const SentenceVector& vector,
                             std::size_t option_index);

ScoreTable ScoreAll(const std::map<std::string, SentenceVector>& vectors,
                    const RelationSchema& schema);

// Signed training weight: srs at or above the threshold stays positive,
// anything below is shifted down by one so negatives land in [-1, 0).
// Throws ConfigError when t lies outside [0, 1]. t = 0 makes every sentence
// positive and t = 1 nearly every sentence negative; both are degenerate but
// permitted.
double ApplyThreshold(double srs, double t);

enum class Provenance { kCrowd, kBaseline, kExpert, kSingle };

std::string ProvenanceName(Provenance provenance);

struct TrainingInstance {
  std::string sentence_id;
  std::string relation;
  double weight = 0.0;
  Provenance provenance = Provenance::kCrowd;
};

// Crowd set: every scored sentence, weighted by thresholded srs.
std::vector<TrainingInstance> BuildCrowdTrainingSet(const ScoreTable& scores,
                                                    const std::string& relation,
                                                    double t);

// Distant-supervision baseline: +1 where the seed relation matches, -1
// elsewhere, except seeds listed in the schema's overlap exclusions for
// |relation|, which are skipped.
std::vector<TrainingInstance> BuildBaselineTrainingSet(
    const std::map<std::string, Sentence>& sentences,
    const std::string& relation, const RelationSchema& schema);

struct ExpertTrainingSet {
  std::vector<TrainingInstance> instances;
  // Sentences skipped because no expert label exists for them.
  std::vector<std::string> missing_expert;
};

// Expert set: +1 / -1 from the expert decision on the seed relation. A
// sentence whose seed is some other relation becomes a negative for
// |relation| when its expert decision was positive (it expresses that other
// relation), unless the seed is overlap-excluded.
ExpertTrainingSet BuildExpertTrainingSet(
    const std::map<std::string, Sentence>& sentences,
    std::span<const ExpertLabel> expert, const std::string& relation,
    const RelationSchema& schema);

// Single-worker set: one seeded-random trusted judgment per sentence, +1 if
// it selected |relation|, else -1. Models the classic lone-annotator regime.
std::vector<TrainingInstance> BuildSingleTrainingSet(
    std::span<const Judgment> trusted, const std::string& relation,
    const RelationSchema& schema, std::uint64_t seed);

// Fraction of expert-labeled sentences (for |relation|, present in the score
// table) whose thresholded crowd sign matches the expert decision.
double CrowdExpertAgreement(const ScoreTable& scores,
                            std::span<const ExpertLabel> expert,
                            const std::string& relation, double t);

struct GoldLabels {
  std::map<std::string, bool> labels;  // sentence id -> positive
  std::vector<std::string> dropped_unresolved;
};

struct AdjudicationQueueEntry {
  std::string sentence_id;
  std::string relation;
  double srs = 0.0;
  bool expert_decision = false;
};

struct EvaluationSetResult {
  // Present only when no disagreement is left unadjudicated.
  std::optional<GoldLabels> gold;
  // Disagreements that still need a human decision.
  std::vector<AdjudicationQueueEntry> queue;
};

// Evaluation labels for |relation| at threshold |t|: sentences where crowd
// and expert agree keep the expert decision; disagreements take the
// adjudicated resolution, with unresolved ones dropped. When any
// disagreement lacks an adjudication record the queue is returned instead of
// gold labels.
EvaluationSetResult BuildEvaluationSet(
    const ScoreTable& scores, std::span<const ExpertLabel> expert,
    const std::string& relation, double t,
    std::span<const AdjudicationRecord> adjudications);

struct ClarityReport {
  // sentence id -> max srs over the configured relations (sentinels
  // excluded): how unambiguous the sentence is.
  std::map<std::string, double> sentence_clarity;
  // relation -> mean srs over sentences where the relation got at least one
  // vote; absent when it was never selected.
  std::map<std::string, std::optional<double>> relation_clarity;
};

ClarityReport BuildClarityReport(
    const ScoreTable& scores,
    const std::map<std::string, SentenceVector>& vectors,
    const RelationSchema& schema);

}  // namespace crowdrel

#endif  // CROWDREL_SCORING_HPP_
