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

#ifndef CROWDREL_STABILITY_HPP_
#define CROWDREL_STABILITY_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crowdrel/evaluation.hpp"
#include "crowdrel/schema.hpp"
#include "crowdrel/vectors.hpp"

namespace crowdrel {

// How many workers are enough: both curves replay the judgments in
// submission order and watch the aggregate settle as workers accumulate.

struct StabilityPoint {
  int k = 0;
  double value = 0.0;
  std::int64_t contributing = 0;
};

enum class CurveKind { kCosineDelta, kAnnotationF1 };

struct StabilityCurve {
  CurveKind kind = CurveKind::kCosineDelta;
  std::vector<StabilityPoint> points;  // strictly increasing k
};

// Sentence vectors over the first 1..n judgments of one sentence, ordered by
// (submission_index, worker_id).
std::vector<SentenceVector> IncrementalVectors(
    std::span<const Judgment> judgments, const RelationSchema& schema);

// Point k holds the mean of 1 - cos(V_{k-1}, V_k) over sentences with at
// least k judgments: the marginal change the k-th worker causes. Unanimous
// sentences contribute exactly 0.
StabilityCurve MeanCosineDeltaCurve(std::span<const Judgment> judgments,
                                    const RelationSchema& schema, int k_max);

// Point k holds micro-averaged annotation F1 using only each sentence's
// first k judgments, against fixed gold labels per relation at that
// relation's threshold. |contributing| counts the pooled evaluated
// sentences.
StabilityCurve QualityByWorkerCount(
    std::span<const Judgment> judgments, const RelationSchema& schema,
    const std::map<std::string, GoldMap>& gold_per_relation,
    const std::map<std::string, double>& threshold_per_relation, int k_max);

}  // namespace crowdrel

#endif  // CROWDREL_STABILITY_HPP_
