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

#include "crowdrel/schema.hpp"

#include <algorithm>
#include <utility>

#include "crowdrel/errors.hpp"
#include "crowdrel/text.hpp"

namespace crowdrel {

std::vector<std::string> RelationSchema::Options() const {
  std::vector<std::string> out = relations;
  out.push_back(sentinel_other);
  out.push_back(sentinel_none);
  return out;
}

std::optional<std::size_t> RelationSchema::OptionIndex(
    std::string_view option) const {
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i] == option) return i;
  }
  if (option == sentinel_other) return OtherIndex();
  if (option == sentinel_none) return NoneIndex();
  return std::nullopt;
}

const std::string& RelationSchema::OptionName(std::size_t index) const {
  if (index < relations.size()) return relations[index];
  if (index == OtherIndex()) return sentinel_other;
  if (index == NoneIndex()) return sentinel_none;
  throw ConfigError("option index " + std::to_string(index) +
                    " out of range for schema of dimension " +
                    std::to_string(Dimension()));
}

bool RelationSchema::IsRelation(std::string_view option) const {
  return std::find(relations.begin(), relations.end(), option) !=
         relations.end();
}

void RelationSchema::Check() const {
  if (relations.empty()) {
    throw ConfigError("schema must configure at least one relation");
  }
  if (sentinel_other.empty() || sentinel_none.empty()) {
    throw ConfigError("schema sentinels must be non-empty");
  }
  std::set<std::string> seen;
  for (const std::string& r : relations) {
    if (r.empty()) throw ConfigError("schema relation identifiers must be non-empty");
    if (!seen.insert(r).second) {
      throw ConfigError("duplicate schema identifier '" + r + "'");
    }
  }
  if (!seen.insert(sentinel_other).second) {
    throw ConfigError("sentinel '" + sentinel_other + "' collides with a relation");
  }
  if (!seen.insert(sentinel_none).second) {
    throw ConfigError("sentinel '" + sentinel_none + "' collides with a relation");
  }
  for (const auto& [relation, ids] : umls_map) {
    if (!IsRelation(relation)) {
      throw ConfigError("umls_map references unknown relation '" + relation + "'");
    }
    (void)ids;
  }
  for (const auto& [relation, excluded] : overlap_exclusions) {
    if (!IsRelation(relation)) {
      throw ConfigError("overlap_exclusions references unknown relation '" +
                        relation + "'");
    }
    for (const std::string& seed : excluded) {
      if (!IsRelation(seed)) {
        throw ConfigError("overlap_exclusions for '" + relation +
                          "' references unknown relation '" + seed + "'");
      }
    }
  }
}

RelationSchema DefaultSchema() {
  RelationSchema schema;
  schema.relations = {
      "treat",        "prevent",         "diagnose",        "cause",
      "location",     "symptom",         "manifestation",   "contraindicate",
      "associated_with", "side_effect",  "is_a",            "part_of",
  };
  schema.umls_map = {
      {"treat", {"treats"}},
      {"prevent", {"prevents"}},
      {"diagnose", {"diagnoses"}},
      {"cause", {"causes"}},
      {"location", {"location_of"}},
      {"symptom", {"has_symptom"}},
      {"manifestation", {"manifestation_of"}},
      {"contraindicate", {"contraindicates"}},
      {"associated_with", {"associated_with"}},
      {"side_effect", {"side_effect_of"}},
      {"is_a", {"isa"}},
      {"part_of", {"part_of"}},
  };
  return schema;
}

std::size_t ValidationReport::ErrorCount() const {
  std::size_t n = 0;
  for (const ValidationIssue& issue : issues) {
    if (issue.severity == Severity::kError) ++n;
  }
  return n;
}

std::size_t ValidationReport::WarningCount() const {
  return issues.size() - ErrorCount();
}

namespace {

void AddIssue(ValidationReport& report, Severity severity, std::string code,
              std::string record, std::string message) {
  report.issues.push_back(ValidationIssue{severity, std::move(code),
                                          std::move(record),
                                          std::move(message)});
}

std::string CanonicalSurfaceForm(const std::string& text) {
  return CollapseWhitespace(NfcNormalize(text));
}

void ValidateTerm(ValidationReport& report, const Sentence& sentence,
                  const TermMention& term, const char* which) {
  std::string record = "sentence " + sentence.id + " " + which;
  if (term.begin >= term.end) {
    AddIssue(report, Severity::kError, "span_empty", record,
             "span [" + std::to_string(term.begin) + ", " +
                 std::to_string(term.end) + ") is empty or reversed");
    return;
  }
  if (term.end > sentence.text.size()) {
    AddIssue(report, Severity::kError, "span_out_of_bounds", record,
             "span end " + std::to_string(term.end) +
                 " exceeds text length " +
                 std::to_string(sentence.text.size()));
    return;
  }
  std::string in_text = sentence.text.substr(term.begin, term.end - term.begin);
  if (CanonicalSurfaceForm(in_text) != CanonicalSurfaceForm(term.surface)) {
    AddIssue(report, Severity::kWarning, "surface_span_mismatch", record,
             "surface form '" + term.surface + "' does not match text span '" +
                 in_text + "'");
  }
}

}  // namespace

ValidationReport ValidateDataset(const std::vector<Sentence>& sentences,
                                 const std::vector<Judgment>& judgments,
                                 const RelationSchema& schema,
                                 const std::vector<ExpertLabel>& expert) {
  ValidationReport report;

  try {
    schema.Check();
  } catch (const ConfigError& e) {
    AddIssue(report, Severity::kError, "schema_invalid", "schema", e.what());
    return report;
  }

  std::set<std::string> sentence_ids;
  std::map<std::string, const Sentence*> by_id;
  for (const Sentence& s : sentences) {
    std::string record = "sentence " + s.id;
    if (s.id.empty()) {
      AddIssue(report, Severity::kError, "empty_sentence_id", record,
               "sentence id must be non-empty");
      continue;
    }
    if (!sentence_ids.insert(s.id).second) {
      AddIssue(report, Severity::kError, "duplicate_sentence_id", record,
               "sentence id appears more than once");
      continue;
    }
    by_id.emplace(s.id, &s);
    ValidateTerm(report, s, s.term1, "term1");
    ValidateTerm(report, s, s.term2, "term2");
    bool spans_valid = s.term1.begin < s.term1.end &&
                       s.term1.end <= s.text.size() &&
                       s.term2.begin < s.term2.end &&
                       s.term2.end <= s.text.size();
    if (spans_valid && s.term1.begin < s.term2.end &&
        s.term2.begin < s.term1.end) {
      AddIssue(report, Severity::kError, "term_overlap", record,
               "term spans overlap");
    }
    if (!schema.IsRelation(s.seed_relation)) {
      AddIssue(report, Severity::kError, "unknown_seed_relation", record,
               "seed relation '" + s.seed_relation +
                   "' is not a configured relation");
    }
  }

  std::map<std::pair<std::string, std::string>, std::size_t> pair_counts;
  for (std::size_t i = 0; i < judgments.size(); ++i) {
    const Judgment& j = judgments[i];
    std::string record = "judgment " + std::to_string(i) + " (worker " +
                         j.worker_id + ", sentence " + j.sentence_id + ")";
    if (j.worker_id.empty()) {
      AddIssue(report, Severity::kError, "empty_worker_id", record,
               "worker id must be non-empty");
    }
    if (sentence_ids.find(j.sentence_id) == sentence_ids.end()) {
      AddIssue(report, Severity::kError, "dangling_sentence_reference", record,
               "sentence '" + j.sentence_id + "' does not exist");
    }
    if (j.selections.empty()) {
      AddIssue(report, Severity::kError, "empty_selection", record,
               "judgment selects no option");
    }
    bool has_none = false;
    for (const std::string& sel : j.selections) {
      if (!schema.OptionIndex(sel).has_value()) {
        AddIssue(report, Severity::kError, "unknown_option", record,
                 "selection '" + sel + "' is not a schema option");
      }
      if (sel == schema.sentinel_none) has_none = true;
    }
    if (has_none && j.selections.size() > 1) {
      AddIssue(report, Severity::kError, "none_not_exclusive", record,
               "'" + schema.sentinel_none +
                   "' must be the sole selection when chosen");
    }
    if (j.submission_index < 0) {
      AddIssue(report, Severity::kError, "negative_submission_index", record,
               "submission index must be non-negative");
    }
    ++pair_counts[{j.worker_id, j.sentence_id}];
  }
  for (const auto& [pair, count] : pair_counts) {
    if (count > 1) {
      AddIssue(report, Severity::kWarning, "duplicate_judgment",
               "worker " + pair.first + ", sentence " + pair.second,
               std::to_string(count) +
                   " judgments for one (worker, sentence) pair; the lowest "
                   "submission index wins");
    }
  }

  std::set<std::pair<std::string, std::string>> expert_seen;
  for (const ExpertLabel& label : expert) {
    std::string record =
        "expert label (sentence " + label.sentence_id + ", " + label.relation + ")";
    auto it = by_id.find(label.sentence_id);
    if (it == by_id.end()) {
      AddIssue(report, Severity::kError, "expert_dangling_sentence", record,
               "sentence '" + label.sentence_id + "' does not exist");
      continue;
    }
    if (it->second->seed_relation != label.relation) {
      AddIssue(report, Severity::kError, "expert_relation_mismatch", record,
               "expert label relation '" + label.relation +
                   "' differs from seed relation '" +
                   it->second->seed_relation + "'");
    }
    if (!expert_seen.insert({label.sentence_id, label.relation}).second) {
      AddIssue(report, Severity::kError, "duplicate_expert_label", record,
               "more than one expert label for this sentence and relation");
    }
  }

  return report;
}

std::vector<Judgment> DedupeJudgments(std::vector<Judgment> judgments) {
  std::map<std::pair<std::string, std::string>, std::size_t> best;
  for (std::size_t i = 0; i < judgments.size(); ++i) {
    const Judgment& j = judgments[i];
    auto key = std::make_pair(j.worker_id, j.sentence_id);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, i);
    } else if (judgments[i].submission_index <
               judgments[it->second].submission_index) {
      it->second = i;
    }
  }
  std::vector<Judgment> out;
  out.reserve(best.size());
  for (std::size_t i = 0; i < judgments.size(); ++i) {
    auto key = std::make_pair(judgments[i].worker_id, judgments[i].sentence_id);
    if (best.at(key) == i) out.push_back(std::move(judgments[i]));
  }
  return out;
}

}  // namespace crowdrel
