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

#ifndef CROWDREL_WORKER_QUALITY_HPP_
#define CROWDREL_WORKER_QUALITY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crowdrel/schema.hpp"

namespace crowdrel {

struct WorkerMetrics {
  std::string worker_id;
  // Mean over the worker's sentences of the cosine between their annotation
  // vector and the sentence vector with that worker removed. A sentence where
  // the worker was alone contributes 0.
  double worker_sentence_agreement = 0.0;
  // Mean cosine against each co-worker on each shared sentence; absent when
  // the worker never shares a sentence.
  std::optional<double> worker_worker_agreement;
  std::int64_t judged_sentences = 0;
  bool spam_flag = false;
  // 0 when kept; r >= 1 when removed in filtering round r.
  int removal_round = 0;
};

double WorkerSentenceAgreement(const std::string& worker_id,
                               std::span<const Judgment> judgments,
                               const RelationSchema& schema);

std::optional<double> WorkerWorkerAgreement(const std::string& worker_id,
                                            std::span<const Judgment> judgments,
                                            const RelationSchema& schema);

// One row per worker present in |judgments|, ordered by worker id.
std::vector<WorkerMetrics> ComputeWorkerMetrics(
    std::span<const Judgment> judgments, const RelationSchema& schema);

struct SpamFilterOptions {
  // Workers below this worker-sentence agreement are flagged. Must lie in
  // [0, 1].
  double tau = 0.5;
  int max_rounds = 10;
  // Workers with fewer judged sentences than this are never auto-flagged;
  // there is too little signal to condemn them.
  int min_judgments_to_flag = 3;
  // Sentences whose trusted worker count falls below this are reported.
  int worker_floor = 10;
};

struct SpamFilterResult {
  std::vector<Judgment> trusted;
  // Final state per input worker (ordered by worker id): survivors carry
  // last-round metrics, removed workers the metrics from their removal round.
  std::vector<WorkerMetrics> metrics;
  int rounds = 0;
  // Sentences left with fewer trusted workers than the configured floor.
  std::vector<std::string> thin_sentences;
};

// Iteratively recomputes agreement over the surviving pool and removes
// flagged workers, so one spammer's noise does not depress their honest
// co-workers' scores. Stops when a round removes nobody or max_rounds is hit.
SpamFilterResult FilterSpamWorkers(std::span<const Judgment> judgments,
                                   const RelationSchema& schema,
                                   const SpamFilterOptions& options = {});

struct FloorReport {
  int floor = 0;
  // sentence id -> trusted worker count, for sentences below the floor.
  std::vector<std::pair<std::string, std::int64_t>> below;
};

FloorReport EnforceWorkerFloor(std::span<const Judgment> trusted, int floor);

}  // namespace crowdrel

#endif  // CROWDREL_WORKER_QUALITY_HPP_
