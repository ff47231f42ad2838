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

#ifndef CROWDREL_SCHEMA_HPP_
#define CROWDREL_SCHEMA_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace crowdrel {

// The closed set of options workers choose from: the configured relations in
// a fixed order, followed by the two sentinels OTHER ("a relation not in the
// list") and NONE ("no relation holds"). Annotation vectors are indexed by
// this order, so processing results are only comparable within one schema.
struct RelationSchema {
  std::vector<std::string> relations;
  std::string sentinel_other = "other";
  std::string sentinel_none = "none";

  // relation -> identifiers in an external vocabulary (informational).
  std::map<std::string, std::set<std::string>> umls_map;

  // relation -> seed relations whose sentences must not be used as negative
  // training instances for it, because the two relations frequently co-occur.
  std::map<std::string, std::set<std::string>> overlap_exclusions;

  std::size_t Dimension() const { return relations.size() + 2; }
  std::size_t OtherIndex() const { return relations.size(); }
  std::size_t NoneIndex() const { return relations.size() + 1; }

  // Relations first, then OTHER, then NONE; positions match vector indices.
  std::vector<std::string> Options() const;
  std::optional<std::size_t> OptionIndex(std::string_view option) const;
  const std::string& OptionName(std::size_t index) const;

  // True for configured relations, false for sentinels and unknown names.
  bool IsRelation(std::string_view option) const;

  // Throws ConfigError when identifiers collide, a sentinel is empty, no
  // relation is configured, or a map references an unknown relation.
  void Check() const;

  bool operator==(const RelationSchema&) const = default;
};

// The schema used throughout the bundled examples: twelve medical relations
// plus the two sentinels (dimension 14).
RelationSchema DefaultSchema();

// Byte span [begin, end) into the sentence text.
struct TermMention {
  std::string surface;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::optional<std::string> category;

  bool operator==(const TermMention&) const = default;
};

struct Sentence {
  std::string id;
  std::string text;
  TermMention term1;
  TermMention term2;
  // The relation whose distant-supervision pass selected this sentence.
  std::string seed_relation;
  std::optional<std::string> source_tag;

  bool operator==(const Sentence&) const = default;
};

// One worker's selections on one sentence. Selections are kept sorted and
// unique; NONE must be the sole selection when present (validation reports
// violations, it does not repair them).
struct Judgment {
  std::string worker_id;
  std::string sentence_id;
  std::vector<std::string> selections;
  std::int64_t submission_index = 0;

  bool operator==(const Judgment&) const = default;
};

struct ExpertLabel {
  std::string sentence_id;
  std::string relation;  // matches the sentence's seed relation
  bool positive = false;

  bool operator==(const ExpertLabel&) const = default;
};

enum class Resolution { kPositive, kNegative, kUnresolved };

struct AdjudicationRecord {
  std::string sentence_id;
  std::string relation;
  Resolution resolution = Resolution::kUnresolved;

  bool operator==(const AdjudicationRecord&) const = default;
};

enum class Severity { kError, kWarning };

struct ValidationIssue {
  Severity severity = Severity::kError;
  std::string code;     // stable machine-readable identifier
  std::string record;   // coordinates of the offending record
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  std::size_t ErrorCount() const;
  std::size_t WarningCount() const;
  // A dataset is accepted iff validation produced no errors. Warnings
  // (duplicate judgments, surface mismatches) do not block processing.
  bool Accepted() const { return ErrorCount() == 0; }
};

// Checks every structural invariant: sentence spans in bounds and
// non-overlapping, seed relations known, judgment selections drawn from the
// schema, NONE exclusive, references resolvable, expert labels on seed
// relations. Surface/span agreement is checked after NFC normalization and
// whitespace collapsing and reported as a warning.
ValidationReport ValidateDataset(const std::vector<Sentence>& sentences,
                                 const std::vector<Judgment>& judgments,
                                 const RelationSchema& schema,
                                 const std::vector<ExpertLabel>& expert = {});

// Resolves duplicate (worker, sentence) pairs by keeping the judgment with
// the lowest submission index; relative order of the kept records is
// preserved. Deterministic, so repeated runs agree.
std::vector<Judgment> DedupeJudgments(std::vector<Judgment> judgments);

}  // namespace crowdrel

#endif  // CROWDREL_SCHEMA_HPP_
