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

#ifndef CROWDREL_EVALUATION_HPP_
#define CROWDREL_EVALUATION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crowdrel {

// sentence id -> value, over one relation.
using GoldMap = std::map<std::string, bool>;
using ScoreMap = std::map<std::string, double>;

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;

  std::int64_t Total() const { return tp + fp + tn + fn; }
};

// Ambiguity-weighted tallies: a true positive counts srs (confident
// sentences matter more), a false positive counts 1 - srs (mistakes on clear
// sentences hurt more), a false negative counts srs (missing a clear
// sentence hurts more).
struct WeightedCounts {
  double srs_tp = 0.0;
  double inv_fp = 0.0;
  double srs_fn = 0.0;
};

struct MetricsReport {
  ConfusionCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool has_weighted = false;
  WeightedCounts weighted_counts;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;

  // Some denominator was zero and the affected metric was forced to 0.
  bool degenerate = false;
};

// Scores at or above zero are positive predictions. Throws DataError naming
// the missing sentences when |predicted| does not cover the gold set;
// predictions outside the gold set are ignored.
ConfusionCounts Confusion(const ScoreMap& predicted, const GoldMap& gold);

// Standard precision / recall / F1 from counts. Zero denominators force the
// metric to 0 and set |degenerate|.
MetricsReport MetricsFromCounts(const ConfusionCounts& counts);

// Adds the weighted triple. |srs| must cover every gold sentence; the sums
// run in gold (sentence id) order so results are bit-stable.
MetricsReport AnnotationQuality(const ScoreMap& predicted, const GoldMap& gold,
                                const ScoreMap* srs = nullptr);

// Pools counts (and weighted sums when every report carries them) and
// recomputes; this is micro-averaging. Throws DataError on an empty span.
MetricsReport MicroAverage(std::span<const MetricsReport> reports);

struct McNemarResult {
  std::int64_t b = 0;  // first system correct, second wrong
  std::int64_t c = 0;  // first system wrong, second correct
  double chi_square = 0.0;
  double p_value = 1.0;
  bool continuity_correction = true;
  // b + c was zero: the systems never disagreed.
  bool degenerate = false;
};

// McNemar's test on paired correctness. With the (default) continuity
// correction, chi^2 = (max(|b - c| - 1, 0))^2 / (b + c); without it,
// (b - c)^2 / (b + c). The p-value is the upper tail of the chi-square
// distribution with one degree of freedom.
McNemarResult McNemarFromCounts(std::int64_t b, std::int64_t c,
                                bool continuity = true);
McNemarResult McNemarTest(std::span<const std::pair<bool, bool>> correctness,
                          bool continuity = true);

// P(X > x) for X ~ chi-square with one degree of freedom, via the erfc
// identity: survival(x) = erfc(sqrt(x / 2)).
double ChiSquareSurvival(double x);

struct SplitPlan {
  std::map<std::string, int> fold_of;  // expert-labeled sentences only
  std::set<std::string> always_train;  // never evaluated
  int k = 0;
  std::uint64_t seed = 0;
};

// Shuffles the expert-labeled ids with the given seed and deals them
// round-robin, so fold sizes differ by at most one. Everything outside the
// expert subset is always-train. With |strata| given, positives and
// negatives are dealt separately so each fold mirrors the base rate.
SplitPlan MakeSplits(const std::set<std::string>& expert_ids,
                     const std::set<std::string>& all_ids, int k,
                     std::uint64_t seed,
                     const GoldMap* strata = nullptr);

struct FoldedEvaluation {
  std::vector<MetricsReport> per_fold;
  // Arithmetic mean of the per-fold metrics (counts summed).
  MetricsReport mean;
  // Metrics recomputed from pooled counts.
  MetricsReport pooled;
};

// Evaluates predictions against gold, per fold when a plan is given,
// otherwise as a single fold. Gold sentences missing from the plan raise
// DataError.
FoldedEvaluation EvaluatePredictions(const ScoreMap& predictions,
                                     const GoldMap& gold,
                                     const ScoreMap* srs = nullptr,
                                     const SplitPlan* plan = nullptr);

struct PredictionRecord;

// Scores of one relation keyed by sentence id. Duplicate (sentence,
// relation) pairs raise DataError.
ScoreMap PredictionScores(std::span<const PredictionRecord> predictions,
                          const std::string& relation);

}  // namespace crowdrel

#endif  // CROWDREL_EVALUATION_HPP_
