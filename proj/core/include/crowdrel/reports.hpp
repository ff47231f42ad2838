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

#ifndef CROWDREL_REPORTS_HPP_
#define CROWDREL_REPORTS_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crowdrel/evaluation.hpp"
#include "crowdrel/scoring.hpp"
#include "crowdrel/simulator.hpp"
#include "crowdrel/stability.hpp"
#include "crowdrel/worker_quality.hpp"

// Artifact writers. Every writer emits fully deterministic bytes: fixed
// column order, sorted keys or explicit orderings, and shortest round-trip
// float formatting, so artifacts can be compared with cmp across runs and
// thread counts.

namespace crowdrel {

void WriteValidationCsv(std::ostream& out, const ValidationReport& report);
void WriteValidationJson(std::ostream& out, const ValidationReport& report);

void WriteVectorsCsv(std::ostream& out,
                     const std::map<std::string, SentenceVector>& vectors,
                     const RelationSchema& schema);

void WriteWorkersCsv(std::ostream& out, std::span<const WorkerMetrics> metrics);
void WriteWorkersJson(std::ostream& out, std::span<const WorkerMetrics> metrics);
void WriteFilterJson(std::ostream& out, const SpamFilterResult& result,
                     const SpamFilterOptions& options);
void WriteThinSentencesCsv(std::ostream& out, const FloorReport& report);

void WriteScoresCsv(std::ostream& out, const ScoreTable& table);
// Reads one relation's column back out of a scores.csv stream.
ScoreMap ParseScoresCsv(std::istream& in, const std::string& relation,
                        const std::string& path = "");
void WriteClaritySentencesCsv(std::ostream& out, const ClarityReport& report);
void WriteClarityRelationsCsv(std::ostream& out, const ClarityReport& report);
void WriteClarityJson(std::ostream& out, const ClarityReport& report);

void WriteTrainingCsv(std::ostream& out,
                      std::span<const TrainingInstance> instances);

void WriteQueueCsv(std::ostream& out,
                   std::span<const AdjudicationQueueEntry> queue);
void WriteGoldCsv(std::ostream& out, const GoldLabels& gold);
void WriteGoldJson(std::ostream& out, const std::string& relation, double t,
                   const GoldLabels& gold);
GoldMap ParseGoldCsv(std::istream& in, const std::string& path = "");

void WriteAgreementCsv(std::ostream& out,
                       std::span<const std::pair<double, double>> points);
void WriteAgreementJson(std::ostream& out, const std::string& relation,
                        std::span<const std::pair<double, double>> points,
                        double best_t, double best_agreement);
void WriteSweepCsv(std::ostream& out,
                   std::span<const std::pair<double, MetricsReport>> points);

// splits.csv: leading "# seed=<seed> k=<k>" comment, then sentence_id,fold
// rows where fold is an integer for expert sentences and "train" for
// always-train sentences.
void WriteSplitsCsv(std::ostream& out, const SplitPlan& plan);
void WriteSplitsJson(std::ostream& out, const SplitPlan& plan);
SplitPlan ParseSplitsCsv(std::istream& in, const std::string& path = "");

void WriteEvaluationCsv(std::ostream& out, const FoldedEvaluation& evaluation);
void WriteEvaluationJson(std::ostream& out, const std::string& relation,
                         const FoldedEvaluation& evaluation);
void WriteLearningCurveCsv(
    std::ostream& out,
    std::span<const std::pair<std::int64_t, MetricsReport>> points);

void WriteMcnemarJson(std::ostream& out, const McNemarResult& result);

void WriteStabilityCsv(std::ostream& out, const StabilityCurve& curve);
void WriteStabilityJson(std::ostream& out, const StabilityCurve& curve);

void WriteLatentJson(std::ostream& out, const LatentTruth& truth,
                     const RelationSchema& schema);

// Manifest tying one run's artifacts together: echoed parameters, artifact
// filenames, and headline numbers, all preformatted strings.
struct RunManifest {
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> artifacts;
  std::vector<std::pair<std::string, std::string>> summary;
};

void WriteRunManifestJson(std::ostream& out, const RunManifest& manifest);

}  // namespace crowdrel

#endif  // CROWDREL_REPORTS_HPP_
