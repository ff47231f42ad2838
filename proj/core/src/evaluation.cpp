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

#include "crowdrel/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "crowdrel/errors.hpp"
#include "crowdrel/ingest.hpp"
#include "crowdrel/rng.hpp"

namespace crowdrel {

namespace {

// Predictions binarize at zero: signed training weights and raw classifier
// margins both use the sign convention.
bool IsPositive(double score) { return score >= 0.0; }

[[noreturn]] void ThrowMissing(const std::vector<std::string>& missing,
                               const char* what) {
  std::string list;
  std::size_t shown = std::min<std::size_t>(missing.size(), 8);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i > 0) list += ", ";
    list += missing[i];
  }
  if (missing.size() > shown) {
    list += ", ... (" + std::to_string(missing.size()) + " total)";
  }
  throw DataError(std::string(what) + ": " + list);
}

}  // namespace

ConfusionCounts Confusion(const ScoreMap& predicted, const GoldMap& gold) {
  std::vector<std::string> missing;
  ConfusionCounts counts;
  for (const auto& [sentence_id, positive] : gold) {
    auto it = predicted.find(sentence_id);
    if (it == predicted.end()) {
      missing.push_back(sentence_id);
      continue;
    }
    bool predicted_positive = IsPositive(it->second);
    if (positive) {
      predicted_positive ? ++counts.tp : ++counts.fn;
    } else {
      predicted_positive ? ++counts.fp : ++counts.tn;
    }
  }
  if (!missing.empty()) {
    ThrowMissing(missing, "predictions missing for gold sentences");
  }
  return counts;
}

MetricsReport MetricsFromCounts(const ConfusionCounts& counts) {
  MetricsReport report;
  report.counts = counts;
  std::int64_t predicted_positive = counts.tp + counts.fp;
  std::int64_t actual_positive = counts.tp + counts.fn;
  if (predicted_positive > 0) {
    report.precision =
        static_cast<double>(counts.tp) / static_cast<double>(predicted_positive);
  } else {
    report.degenerate = true;
  }
  if (actual_positive > 0) {
    report.recall =
        static_cast<double>(counts.tp) / static_cast<double>(actual_positive);
  } else {
    report.degenerate = true;
  }
  double pr = report.precision + report.recall;
  if (pr > 0.0) {
    report.f1 = 2.0 * report.precision * report.recall / pr;
  } else {
    report.degenerate = true;
  }
  return report;
}

namespace {

void FillWeighted(MetricsReport& report) {
  const WeightedCounts& w = report.weighted_counts;
  double p_denominator = w.srs_tp + w.inv_fp;
  double r_denominator = w.srs_tp + w.srs_fn;
  if (p_denominator > 0.0) {
    report.weighted_precision = w.srs_tp / p_denominator;
  } else {
    report.degenerate = true;
  }
  if (r_denominator > 0.0) {
    report.weighted_recall = w.srs_tp / r_denominator;
  } else {
    report.degenerate = true;
  }
  double pr = report.weighted_precision + report.weighted_recall;
  if (pr > 0.0) {
    report.weighted_f1 =
        2.0 * report.weighted_precision * report.weighted_recall / pr;
  } else {
    report.degenerate = true;
  }
  report.has_weighted = true;
}

}  // namespace

MetricsReport AnnotationQuality(const ScoreMap& predicted, const GoldMap& gold,
                                const ScoreMap* srs) {
  MetricsReport report = MetricsFromCounts(Confusion(predicted, gold));
  if (srs == nullptr) return report;

  std::vector<std::string> missing;
  // Gold map order fixes the summation order: results are independent of how
  // the caller assembled the inputs.
  for (const auto& [sentence_id, positive] : gold) {
    auto score_it = srs->find(sentence_id);
    if (score_it == srs->end()) {
      missing.push_back(sentence_id);
      continue;
    }
    double score = score_it->second;
    bool predicted_positive = IsPositive(predicted.at(sentence_id));
    if (positive && predicted_positive) {
      report.weighted_counts.srs_tp += score;
    } else if (!positive && predicted_positive) {
      report.weighted_counts.inv_fp += 1.0 - score;
    } else if (positive && !predicted_positive) {
      report.weighted_counts.srs_fn += score;
    }
  }
  if (!missing.empty()) {
    ThrowMissing(missing, "sentence-relation scores missing for gold sentences");
  }
  FillWeighted(report);
  return report;
}

MetricsReport MicroAverage(std::span<const MetricsReport> reports) {
  if (reports.empty()) {
    throw DataError("cannot micro-average zero reports");
  }
  ConfusionCounts counts;
  WeightedCounts weighted;
  bool all_weighted = true;
  for (const MetricsReport& report : reports) {
    counts.tp += report.counts.tp;
    counts.fp += report.counts.fp;
    counts.tn += report.counts.tn;
    counts.fn += report.counts.fn;
    all_weighted = all_weighted && report.has_weighted;
    weighted.srs_tp += report.weighted_counts.srs_tp;
    weighted.inv_fp += report.weighted_counts.inv_fp;
    weighted.srs_fn += report.weighted_counts.srs_fn;
  }
  MetricsReport pooled = MetricsFromCounts(counts);
  if (all_weighted) {
    pooled.weighted_counts = weighted;
    FillWeighted(pooled);
  }
  return pooled;
}

McNemarResult McNemarFromCounts(std::int64_t b, std::int64_t c,
                                bool continuity) {
  if (b < 0 || c < 0) {
    throw DataError("discordant counts must be non-negative");
  }
  McNemarResult result;
  result.b = b;
  result.c = c;
  result.continuity_correction = continuity;
  std::int64_t discordant = b + c;
  if (discordant == 0) {
    result.degenerate = true;
    result.chi_square = 0.0;
    result.p_value = 1.0;
    return result;
  }
  double difference = std::abs(static_cast<double>(b - c));
  if (continuity) {
    // The correction cannot push the statistic below zero.
    difference = std::max(difference - 1.0, 0.0);
  }
  result.chi_square =
      difference * difference / static_cast<double>(discordant);
  result.p_value = ChiSquareSurvival(result.chi_square);
  return result;
}

McNemarResult McNemarTest(std::span<const std::pair<bool, bool>> correctness,
                          bool continuity) {
  std::int64_t b = 0;
  std::int64_t c = 0;
  for (const auto& [first_correct, second_correct] : correctness) {
    if (first_correct && !second_correct) ++b;
    if (!first_correct && second_correct) ++c;
  }
  return McNemarFromCounts(b, c, continuity);
}

double ChiSquareSurvival(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

SplitPlan MakeSplits(const std::set<std::string>& expert_ids,
                     const std::set<std::string>& all_ids, int k,
                     std::uint64_t seed, const GoldMap* strata) {
  if (k < 1) {
    throw ConfigError("fold count must be at least 1");
  }
  if (static_cast<std::size_t>(k) > expert_ids.size()) {
    throw ConfigError("fold count " + std::to_string(k) +
                      " exceeds the expert subset size " +
                      std::to_string(expert_ids.size()));
  }

  SplitPlan plan;
  plan.k = k;
  plan.seed = seed;
  for (const std::string& id : all_ids) {
    if (expert_ids.find(id) == expert_ids.end()) {
      plan.always_train.insert(id);
    }
  }

  auto deal = [&](std::vector<std::string> ids, std::string_view tag,
                  int& next_fold) {
    auto stream = rng::CellStream(seed, tag);
    stream.Shuffle(ids);
    for (const std::string& id : ids) {
      plan.fold_of[id] = next_fold;
      next_fold = (next_fold + 1) % k;
    }
  };

  int next_fold = 0;
  if (strata == nullptr) {
    deal({expert_ids.begin(), expert_ids.end()}, "splits", next_fold);
  } else {
    std::vector<std::string> positives;
    std::vector<std::string> negatives;
    for (const std::string& id : expert_ids) {
      auto it = strata->find(id);
      if (it == strata->end()) {
        throw DataError("no stratum for expert sentence '" + id + "'");
      }
      (it->second ? positives : negatives).push_back(id);
    }
    deal(std::move(positives), "splits_pos", next_fold);
    deal(std::move(negatives), "splits_neg", next_fold);
  }
  return plan;
}

FoldedEvaluation EvaluatePredictions(const ScoreMap& predictions,
                                     const GoldMap& gold,
                                     const ScoreMap* srs,
                                     const SplitPlan* plan) {
  FoldedEvaluation result;
  if (plan == nullptr) {
    result.per_fold.push_back(AnnotationQuality(predictions, gold, srs));
    result.mean = result.per_fold.front();
    result.pooled = result.per_fold.front();
    return result;
  }

  std::vector<std::string> unplanned;
  std::vector<GoldMap> folds(static_cast<std::size_t>(plan->k));
  for (const auto& [sentence_id, positive] : gold) {
    auto it = plan->fold_of.find(sentence_id);
    if (it == plan->fold_of.end()) {
      unplanned.push_back(sentence_id);
      continue;
    }
    folds[static_cast<std::size_t>(it->second)].emplace(sentence_id, positive);
  }
  if (!unplanned.empty()) {
    ThrowMissing(unplanned, "gold sentences missing from the split plan");
  }

  for (const GoldMap& fold : folds) {
    if (fold.empty()) {
      MetricsReport empty;
      empty.degenerate = true;
      empty.has_weighted = srs != nullptr;
      result.per_fold.push_back(empty);
      continue;
    }
    result.per_fold.push_back(AnnotationQuality(predictions, fold, srs));
  }

  MetricsReport mean;
  double n = static_cast<double>(result.per_fold.size());
  for (const MetricsReport& fold : result.per_fold) {
    mean.counts.tp += fold.counts.tp;
    mean.counts.fp += fold.counts.fp;
    mean.counts.tn += fold.counts.tn;
    mean.counts.fn += fold.counts.fn;
    mean.precision += fold.precision / n;
    mean.recall += fold.recall / n;
    mean.f1 += fold.f1 / n;
    mean.weighted_counts.srs_tp += fold.weighted_counts.srs_tp;
    mean.weighted_counts.inv_fp += fold.weighted_counts.inv_fp;
    mean.weighted_counts.srs_fn += fold.weighted_counts.srs_fn;
    mean.weighted_precision += fold.weighted_precision / n;
    mean.weighted_recall += fold.weighted_recall / n;
    mean.weighted_f1 += fold.weighted_f1 / n;
    mean.degenerate = mean.degenerate || fold.degenerate;
  }
  mean.has_weighted = srs != nullptr;
  result.mean = mean;
  result.pooled = MicroAverage(result.per_fold);
  return result;
}

ScoreMap PredictionScores(std::span<const PredictionRecord> predictions,
                          const std::string& relation) {
  ScoreMap scores;
  for (const PredictionRecord& p : predictions) {
    if (p.relation != relation) continue;
    if (!scores.emplace(p.sentence_id, p.score).second) {
      throw DataError("duplicate prediction for sentence '" + p.sentence_id +
                      "' and relation '" + relation + "'");
    }
  }
  return scores;
}

}  // namespace crowdrel
