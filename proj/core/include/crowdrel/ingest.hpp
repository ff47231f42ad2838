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

#ifndef CROWDREL_INGEST_HPP_
#define CROWDREL_INGEST_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crowdrel/keyval.hpp"
#include "crowdrel/schema.hpp"

namespace crowdrel {

struct PredictionRecord {
  std::string sentence_id;
  std::string relation;
  double score = 0.0;

  bool operator==(const PredictionRecord&) const = default;
};

// Everything one processing run needs. Sentences are keyed by id; duplicate
// ids are a validation error and the first occurrence wins here.
struct DatasetBundle {
  RelationSchema schema;
  std::map<std::string, Sentence> sentences;
  std::vector<Judgment> judgments;
  std::vector<ExpertLabel> expert_labels;
};

// Schema file: ordered "key = value" lines. Recognized keys: relations
// (comma-separated), sentinel_other, sentinel_none, umls_map.<relation> and
// overlap_exclusions.<relation> (semicolon-separated). Unknown keys are a
// ParseError, as are schemas that fail RelationSchema::Check.
RelationSchema ParseSchema(std::istream& in, const std::string& path = "");
void WriteSchema(std::ostream& out, const RelationSchema& schema);

// sentences.csv. Canonical columns: id, text, term1, term1_start, term1_end,
// term2, term2_start, term2_end, seed_relation, source_tag. Optional
// term1_category / term2_category columns are read when present and written
// only when some sentence carries a category. Spans must parse as
// non-negative integers and lie inside the text.
std::vector<Sentence> ParseSentences(std::istream& in,
                                     const std::string& path = "");
void WriteSentences(std::ostream& out, std::span<const Sentence> sentences);

// judgments.csv: worker_id, sentence_id, selections (semicolon-separated),
// submission_index. A missing submission_index column is reconstructed from
// file order, counting per sentence. Unknown options and empty selections
// are ParseErrors; NONE-exclusivity is left to validation.
std::vector<Judgment> ParseJudgments(std::istream& in,
                                     const RelationSchema& schema,
                                     const std::string& path = "");
void WriteJudgments(std::ostream& out, std::span<const Judgment> judgments);

// expert.csv: sentence_id, relation, decision (0 or 1).
std::vector<ExpertLabel> ParseExpertLabels(std::istream& in,
                                           const std::string& path = "");
void WriteExpertLabels(std::ostream& out, std::span<const ExpertLabel> labels);

// adjudications.csv: sentence_id, relation, resolution
// (positive | negative | unresolved).
std::vector<AdjudicationRecord> ParseAdjudications(
    std::istream& in, const std::string& path = "");
void WriteAdjudications(std::ostream& out,
                        std::span<const AdjudicationRecord> records);

// predictions.csv: sentence_id, relation, score. Scores at or above zero are
// read as positive predictions downstream.
std::vector<PredictionRecord> ParsePredictions(std::istream& in,
                                               const std::string& path = "");
void WritePredictions(std::ostream& out,
                      std::span<const PredictionRecord> predictions);

struct LoadResult {
  DatasetBundle bundle;
  ValidationReport report;
};

// Parses all dataset files, validates, and applies judgment deduplication.
// File-open failures raise ConfigError; malformed content raises ParseError.
// Validation errors are returned, not thrown, so callers can render them.
LoadResult LoadBundle(const std::string& schema_path,
                      const std::string& sentences_path,
                      const std::string& judgments_path,
                      const std::string& expert_path = "");

// Column mapping for one vendor's raw crowd export. Defaults follow the
// conventions of CrowdFlower-era job result files: per-judgment rows with
// underscore-prefixed platform columns and unit-level task columns repeated
// on every row.
struct ImportMapping {
  std::string worker_column = "_worker_id";
  std::string unit_column = "_unit_id";
  std::string selections_column = "relations";
  // Submission order. Empty disables ordering; file order is used instead.
  std::string order_column = "_started_at";
  // Any of these characters separates selections; newlines always do.
  std::string selection_separators = "|;";

  std::string text_column = "sentence";
  std::string term1_column = "term1";
  std::string term1_begin_column = "b1";
  std::string term1_end_column = "e1";
  std::string term2_column = "term2";
  std::string term2_begin_column = "b2";
  std::string term2_end_column = "e2";
  std::string seed_column = "relation";
  std::string source_tag;  // constant tag for all imported sentences

  // Raw selection token (after normalization) -> schema option. Tokens that
  // normalize directly to a schema option need no entry.
  std::map<std::string, std::string> value_map;

  // Keys mirror the field names above; value_map entries use the prefix
  // "map.". Unknown keys are a ParseError.
  static ImportMapping FromDoc(const KeyValueDoc& doc,
                               const std::string& path = "");
};

struct ImportResult {
  std::vector<Sentence> sentences;
  std::vector<Judgment> judgments;
  std::vector<std::string> warnings;
};

// Converts a raw export into canonical sentences and judgments. Rows whose
// selections all fail to map, or whose unit lacks usable term offsets (no
// offset columns and no substring match), are skipped with a warning rather
// than failing the import; validation gates the converted output.
ImportResult ImportRawExport(std::istream& raw, const ImportMapping& mapping,
                             const RelationSchema& schema,
                             const std::string& path = "");

}  // namespace crowdrel

#endif  // CROWDREL_INGEST_HPP_
