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

#include "crowdrel/ingest.hpp"

#include <cmath>
#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "crowdrel/csv.hpp"
#include "crowdrel/errors.hpp"
#include "crowdrel/text.hpp"

namespace crowdrel {

namespace {

// Column lookup for one CSV file. Canonical formats are strict about row
// arity; the import adapter reads rows leniently.
class Header {
 public:
  Header(const std::vector<std::string>& names, std::string path,
         std::size_t line)
      : path_(std::move(path)), line_(line), width_(names.size()) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      index_.emplace(std::string(Trim(names[i])), i);
    }
  }

  std::size_t Require(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
      throw ParseError(path_, line_, "missing required column '" + name + "'");
    }
    return it->second;
  }

  std::optional<std::size_t> Find(const std::string& name) const {
    if (name.empty()) return std::nullopt;
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  void CheckArity(const std::vector<std::string>& row, std::size_t line) const {
    if (row.size() != width_) {
      throw ParseError(path_, line,
                       "expected " + std::to_string(width_) + " fields, got " +
                           std::to_string(row.size()));
    }
  }

  std::size_t width() const { return width_; }

 private:
  std::map<std::string, std::size_t> index_;
  std::string path_;
  std::size_t line_;
  std::size_t width_;
};

bool IsBlankRow(const std::vector<std::string>& row) {
  return row.size() == 1 && row[0].empty();
}

std::optional<Header> ReadHeader(CsvReader& reader, const std::string& path) {
  auto row = reader.Next();
  if (!row.has_value() || IsBlankRow(*row)) {
    return std::nullopt;
  }
  return Header(*row, path, reader.RecordLine());
}

std::size_t ParseSpanOffset(const std::string& field, const std::string& what,
                            const std::string& path, std::size_t line) {
  auto value = ParseInt(field);
  if (!value.has_value() || *value < 0) {
    throw ParseError(path, line,
                     what + " must be a non-negative integer, got '" + field + "'");
  }
  return static_cast<std::size_t>(*value);
}

TermMention ReadTerm(const std::vector<std::string>& row, const Header& header,
                     const std::string& prefix, const std::string& text,
                     const std::string& path, std::size_t line) {
  TermMention term;
  term.surface = row[header.Require(prefix)];
  term.begin = ParseSpanOffset(row[header.Require(prefix + "_start")],
                               prefix + "_start", path, line);
  term.end = ParseSpanOffset(row[header.Require(prefix + "_end")],
                             prefix + "_end", path, line);
  if (term.begin >= term.end) {
    throw ParseError(path, line, prefix + " span is empty or reversed");
  }
  if (term.end > text.size()) {
    throw ParseError(path, line, prefix + " span end " +
                                     std::to_string(term.end) +
                                     " exceeds text length " +
                                     std::to_string(text.size()));
  }
  if (auto category = header.Find(prefix + "_category");
      category.has_value() && !row[*category].empty()) {
    term.category = row[*category];
  }
  return term;
}

std::vector<std::string> SplitList(const std::string& value, char separator) {
  std::vector<std::string> out;
  for (const std::string& part : Split(value, separator)) {
    std::string item(Trim(part));
    if (!item.empty()) out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

RelationSchema ParseSchema(std::istream& in, const std::string& path) {
  KeyValueDoc doc = KeyValueDoc::Parse(in, path);
  RelationSchema schema;
  schema.relations.clear();
  bool saw_relations = false;

  for (const auto& [key, value] : doc.entries()) {
    if (key == "relations") {
      schema.relations = SplitList(value, ',');
      saw_relations = true;
    } else if (key == "sentinel_other") {
      schema.sentinel_other = value;
    } else if (key == "sentinel_none") {
      schema.sentinel_none = value;
    } else if (key.rfind("umls_map.", 0) == 0) {
      std::string relation = key.substr(std::string("umls_map.").size());
      auto ids = SplitList(value, ';');
      schema.umls_map[relation].insert(ids.begin(), ids.end());
    } else if (key.rfind("overlap_exclusions.", 0) == 0) {
      std::string relation = key.substr(std::string("overlap_exclusions.").size());
      auto seeds = SplitList(value, ';');
      schema.overlap_exclusions[relation].insert(seeds.begin(), seeds.end());
    } else {
      throw ParseError(path, 0, "unknown schema key '" + key + "'");
    }
  }
  if (!saw_relations) {
    throw ParseError(path, 0, "missing required key 'relations'");
  }
  try {
    schema.Check();
  } catch (const ConfigError& e) {
    throw ParseError(path, 0, e.what());
  }
  return schema;
}

void WriteSchema(std::ostream& out, const RelationSchema& schema) {
  KeyValueDoc doc;
  doc.Set("relations", JoinStrings(schema.relations, ", "));
  doc.Set("sentinel_other", schema.sentinel_other);
  doc.Set("sentinel_none", schema.sentinel_none);
  for (const auto& [relation, ids] : schema.umls_map) {
    doc.Set("umls_map." + relation,
            JoinStrings({ids.begin(), ids.end()}, "; "));
  }
  for (const auto& [relation, seeds] : schema.overlap_exclusions) {
    doc.Set("overlap_exclusions." + relation,
            JoinStrings({seeds.begin(), seeds.end()}, "; "));
  }
  doc.Serialize(out);
}

std::vector<Sentence> ParseSentences(std::istream& in,
                                     const std::string& path) {
  CsvReader reader(in, path);
  auto header = ReadHeader(reader, path);
  if (!header.has_value()) {
    throw ParseError(path, 1, "missing header row");
  }

  std::vector<Sentence> sentences;
  while (auto row = reader.Next()) {
    if (IsBlankRow(*row)) continue;
    std::size_t line = reader.RecordLine();
    header->CheckArity(*row, line);

    Sentence s;
    s.id = (*row)[header->Require("id")];
    if (s.id.empty()) {
      throw ParseError(path, line, "sentence id must be non-empty");
    }
    s.text = (*row)[header->Require("text")];
    s.term1 = ReadTerm(*row, *header, "term1", s.text, path, line);
    s.term2 = ReadTerm(*row, *header, "term2", s.text, path, line);
    s.seed_relation = (*row)[header->Require("seed_relation")];
    if (auto tag = header->Find("source_tag");
        tag.has_value() && !(*row)[*tag].empty()) {
      s.source_tag = (*row)[*tag];
    }
    sentences.push_back(std::move(s));
  }
  return sentences;
}

void WriteSentences(std::ostream& out, std::span<const Sentence> sentences) {
  bool any_category = false;
  for (const Sentence& s : sentences) {
    if (s.term1.category.has_value() || s.term2.category.has_value()) {
      any_category = true;
      break;
    }
  }

  CsvWriter writer(out);
  std::vector<std::string> header = {
      "id",          "text",        "term1",         "term1_start",
      "term1_end",   "term2",       "term2_start",   "term2_end",
      "seed_relation", "source_tag",
  };
  if (any_category) {
    header.push_back("term1_category");
    header.push_back("term2_category");
  }
  writer.Row(header);

  for (const Sentence& s : sentences) {
    std::vector<std::string> row = {
        s.id,
        s.text,
        s.term1.surface,
        std::to_string(s.term1.begin),
        std::to_string(s.term1.end),
        s.term2.surface,
        std::to_string(s.term2.begin),
        std::to_string(s.term2.end),
        s.seed_relation,
        s.source_tag.value_or(""),
    };
    if (any_category) {
      row.push_back(s.term1.category.value_or(""));
      row.push_back(s.term2.category.value_or(""));
    }
    writer.Row(row);
  }
}

std::vector<Judgment> ParseJudgments(std::istream& in,
                                     const RelationSchema& schema,
                                     const std::string& path) {
  CsvReader reader(in, path);
  auto header = ReadHeader(reader, path);
  if (!header.has_value()) {
    throw ParseError(path, 1, "missing header row");
  }
  auto index_column = header->Find("submission_index");
  std::map<std::string, std::int64_t> per_sentence_counter;

  std::vector<Judgment> judgments;
  while (auto row = reader.Next()) {
    if (IsBlankRow(*row)) continue;
    std::size_t line = reader.RecordLine();
    header->CheckArity(*row, line);

    Judgment j;
    j.worker_id = (*row)[header->Require("worker_id")];
    j.sentence_id = (*row)[header->Require("sentence_id")];
    if (j.worker_id.empty() || j.sentence_id.empty()) {
      throw ParseError(path, line, "worker_id and sentence_id must be non-empty");
    }

    const std::string& cell = (*row)[header->Require("selections")];
    for (const std::string& part : Split(cell, ';')) {
      std::string token(Trim(part));
      if (token.empty()) {
        throw ParseError(path, line, "empty selection token");
      }
      if (!schema.OptionIndex(token).has_value()) {
        throw ParseError(path, line,
                         "selection '" + token + "' is not a schema option");
      }
      j.selections.push_back(std::move(token));
    }
    if (j.selections.empty()) {
      throw ParseError(path, line, "judgment selects no option");
    }
    std::sort(j.selections.begin(), j.selections.end());
    j.selections.erase(std::unique(j.selections.begin(), j.selections.end()),
                       j.selections.end());

    if (index_column.has_value()) {
      const std::string& field = (*row)[*index_column];
      auto value = ParseInt(field);
      if (!value.has_value() || *value < 0) {
        throw ParseError(path, line,
                         "submission_index must be a non-negative integer, got '" +
                             field + "'");
      }
      j.submission_index = *value;
    } else {
      j.submission_index = per_sentence_counter[j.sentence_id]++;
    }
    judgments.push_back(std::move(j));
  }
  return judgments;
}

void WriteJudgments(std::ostream& out, std::span<const Judgment> judgments) {
  CsvWriter writer(out);
  writer.Row({"worker_id", "sentence_id", "selections", "submission_index"});
  for (const Judgment& j : judgments) {
    writer.Row({j.worker_id, j.sentence_id, JoinStrings(j.selections, ";"),
                std::to_string(j.submission_index)});
  }
}

std::vector<ExpertLabel> ParseExpertLabels(std::istream& in,
                                           const std::string& path) {
  CsvReader reader(in, path);
  auto header = ReadHeader(reader, path);
  if (!header.has_value()) {
    throw ParseError(path, 1, "missing header row");
  }

  std::vector<ExpertLabel> labels;
  while (auto row = reader.Next()) {
    if (IsBlankRow(*row)) continue;
    std::size_t line = reader.RecordLine();
    header->CheckArity(*row, line);

    ExpertLabel label;
    label.sentence_id = (*row)[header->Require("sentence_id")];
    label.relation = (*row)[header->Require("relation")];
    const std::string& decision = (*row)[header->Require("decision")];
    if (decision == "1") {
      label.positive = true;
    } else if (decision == "0") {
      label.positive = false;
    } else {
      throw ParseError(path, line, "decision must be 0 or 1, got '" + decision + "'");
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

void WriteExpertLabels(std::ostream& out, std::span<const ExpertLabel> labels) {
  CsvWriter writer(out);
  writer.Row({"sentence_id", "relation", "decision"});
  for (const ExpertLabel& label : labels) {
    writer.Row({label.sentence_id, label.relation, label.positive ? "1" : "0"});
  }
}

std::vector<AdjudicationRecord> ParseAdjudications(std::istream& in,
                                                   const std::string& path) {
  CsvReader reader(in, path);
  auto header = ReadHeader(reader, path);
  if (!header.has_value()) {
    throw ParseError(path, 1, "missing header row");
  }

  std::vector<AdjudicationRecord> records;
  while (auto row = reader.Next()) {
    if (IsBlankRow(*row)) continue;
    std::size_t line = reader.RecordLine();
    header->CheckArity(*row, line);

    AdjudicationRecord record;
    record.sentence_id = (*row)[header->Require("sentence_id")];
    record.relation = (*row)[header->Require("relation")];
    const std::string& resolution = (*row)[header->Require("resolution")];
    if (resolution == "positive") {
      record.resolution = Resolution::kPositive;
    } else if (resolution == "negative") {
      record.resolution = Resolution::kNegative;
    } else if (resolution == "unresolved") {
      record.resolution = Resolution::kUnresolved;
    } else {
      throw ParseError(path, line,
                       "resolution must be positive, negative, or unresolved; got '" +
                           resolution + "'");
    }
    records.push_back(std::move(record));
  }
  return records;
}

void WriteAdjudications(std::ostream& out,
                        std::span<const AdjudicationRecord> records) {
  CsvWriter writer(out);
  writer.Row({"sentence_id", "relation", "resolution"});
  for (const AdjudicationRecord& record : records) {
    const char* resolution = record.resolution == Resolution::kPositive
                                 ? "positive"
                                 : record.resolution == Resolution::kNegative
                                       ? "negative"
                                       : "unresolved";
    writer.Row({record.sentence_id, record.relation, resolution});
  }
}

std::vector<PredictionRecord> ParsePredictions(std::istream& in,
                                               const std::string& path) {
  CsvReader reader(in, path);
  auto header = ReadHeader(reader, path);
  if (!header.has_value()) {
    throw ParseError(path, 1, "missing header row");
  }

  std::vector<PredictionRecord> predictions;
  while (auto row = reader.Next()) {
    if (IsBlankRow(*row)) continue;
    std::size_t line = reader.RecordLine();
    header->CheckArity(*row, line);

    PredictionRecord p;
    p.sentence_id = (*row)[header->Require("sentence_id")];
    p.relation = (*row)[header->Require("relation")];
    const std::string& field = (*row)[header->Require("score")];
    auto score = ParseDouble(field);
    if (!score.has_value() || !std::isfinite(*score)) {
      throw ParseError(path, line, "score must be a finite number, got '" + field + "'");
    }
    p.score = *score;
    predictions.push_back(std::move(p));
  }
  return predictions;
}

void WritePredictions(std::ostream& out,
                      std::span<const PredictionRecord> predictions) {
  CsvWriter writer(out);
  writer.Row({"sentence_id", "relation", "score"});
  for (const PredictionRecord& p : predictions) {
    writer.Row({p.sentence_id, p.relation, FormatDouble(p.score)});
  }
}

namespace {

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open '" + path + "'");
  }
  return in;
}

}  // namespace

LoadResult LoadBundle(const std::string& schema_path,
                      const std::string& sentences_path,
                      const std::string& judgments_path,
                      const std::string& expert_path) {
  LoadResult result;

  {
    std::ifstream in = OpenOrThrow(schema_path);
    result.bundle.schema = ParseSchema(in, schema_path);
  }
  std::vector<Sentence> sentences;
  {
    std::ifstream in = OpenOrThrow(sentences_path);
    sentences = ParseSentences(in, sentences_path);
  }
  std::vector<Judgment> judgments;
  {
    std::ifstream in = OpenOrThrow(judgments_path);
    judgments = ParseJudgments(in, result.bundle.schema, judgments_path);
  }
  if (!expert_path.empty()) {
    std::ifstream in = OpenOrThrow(expert_path);
    result.bundle.expert_labels = ParseExpertLabels(in, expert_path);
  }

  result.report = ValidateDataset(sentences, judgments, result.bundle.schema,
                                  result.bundle.expert_labels);
  for (Sentence& s : sentences) {
    result.bundle.sentences.try_emplace(s.id, std::move(s));
  }
  result.bundle.judgments = DedupeJudgments(std::move(judgments));
  return result;
}

ImportMapping ImportMapping::FromDoc(const KeyValueDoc& doc,
                                     const std::string& path) {
  ImportMapping mapping;
  for (const auto& [key, value] : doc.entries()) {
    if (key == "worker_column") {
      mapping.worker_column = value;
    } else if (key == "unit_column") {
      mapping.unit_column = value;
    } else if (key == "selections_column") {
      mapping.selections_column = value;
    } else if (key == "order_column") {
      mapping.order_column = value;
    } else if (key == "selection_separators") {
      mapping.selection_separators = value;
    } else if (key == "text_column") {
      mapping.text_column = value;
    } else if (key == "term1_column") {
      mapping.term1_column = value;
    } else if (key == "term1_begin_column") {
      mapping.term1_begin_column = value;
    } else if (key == "term1_end_column") {
      mapping.term1_end_column = value;
    } else if (key == "term2_column") {
      mapping.term2_column = value;
    } else if (key == "term2_begin_column") {
      mapping.term2_begin_column = value;
    } else if (key == "term2_end_column") {
      mapping.term2_end_column = value;
    } else if (key == "seed_column") {
      mapping.seed_column = value;
    } else if (key == "source_tag") {
      mapping.source_tag = value;
    } else if (key.rfind("map.", 0) == 0) {
      mapping.value_map[key.substr(4)] = value;
    } else {
      throw ParseError(path, 0, "unknown mapping key '" + key + "'");
    }
  }
  return mapping;
}

namespace {

// Raw exports wrap tokens in list syntax and vary case; canonicalize before
// looking them up.
std::string NormalizeToken(std::string_view token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  auto is_wrapper = [](char c) {
    return c == '[' || c == ']' || c == '\'' || c == '"' || c == ' ' ||
           c == '\t' || c == '\r' || c == '\n';
  };
  while (begin < end && is_wrapper(token[begin])) ++begin;
  while (end > begin && is_wrapper(token[end - 1])) --end;
  std::string out = ToLower(token.substr(begin, end - begin));
  for (char& c : out) {
    if (c == ' ') c = '_';
  }
  return out;
}

std::vector<std::string> SplitSelectionsCell(const std::string& cell,
                                             const std::string& separators) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(current);
    current.clear();
  };
  for (char c : cell) {
    if (c == '\n' || separators.find(c) != std::string::npos) {
      flush();
    } else {
      current += c;
    }
  }
  flush();
  return tokens;
}

struct RawUnit {
  Sentence sentence;
  bool usable = false;
};

std::optional<std::pair<std::size_t, std::size_t>> LocateTerm(
    const std::string& text, const std::string& surface, std::size_t from) {
  if (surface.empty()) return std::nullopt;
  std::size_t pos = text.find(surface, from);
  if (pos == std::string::npos) return std::nullopt;
  return std::make_pair(pos, pos + surface.size());
}

}  // namespace

ImportResult ImportRawExport(std::istream& raw, const ImportMapping& mapping,
                             const RelationSchema& schema,
                             const std::string& path) {
  CsvReader reader(raw, path);
  auto header = ReadHeader(reader, path);
  if (!header.has_value()) {
    throw ParseError(path, 1, "missing header row");
  }

  std::size_t worker_col = header->Require(mapping.worker_column);
  std::size_t unit_col = header->Require(mapping.unit_column);
  std::size_t selections_col = header->Require(mapping.selections_column);
  auto order_col = header->Find(mapping.order_column);
  auto text_col = header->Find(mapping.text_column);
  auto term1_col = header->Find(mapping.term1_column);
  auto b1_col = header->Find(mapping.term1_begin_column);
  auto e1_col = header->Find(mapping.term1_end_column);
  auto term2_col = header->Find(mapping.term2_column);
  auto b2_col = header->Find(mapping.term2_begin_column);
  auto e2_col = header->Find(mapping.term2_end_column);
  auto seed_col = header->Find(mapping.seed_column);

  ImportResult result;
  std::set<std::string> warned;
  auto warn_once = [&](const std::string& message) {
    if (warned.insert(message).second) result.warnings.push_back(message);
  };

  struct PendingJudgment {
    Judgment judgment;
    std::string order_key;
    std::size_t row_index = 0;
  };
  std::map<std::string, RawUnit> units;
  std::map<std::string, std::vector<PendingJudgment>> pending;

  auto field = [](const std::vector<std::string>& row,
                  std::size_t index) -> std::string {
    return index < row.size() ? row[index] : std::string();
  };
  auto opt_field = [&](const std::vector<std::string>& row,
                       const std::optional<std::size_t>& index) -> std::string {
    return index.has_value() ? field(row, *index) : std::string();
  };

  std::size_t row_index = 0;
  while (auto row = reader.Next()) {
    if (IsBlankRow(*row)) continue;
    ++row_index;
    std::size_t line = reader.RecordLine();

    std::string unit_id = field(*row, unit_col);
    std::string worker_id = field(*row, worker_col);
    if (unit_id.empty() || worker_id.empty()) {
      warn_once("row " + std::to_string(line) +
                ": missing unit or worker id; row skipped");
      continue;
    }

    // Assemble the unit's sentence from the first row that carries it.
    auto unit_it = units.find(unit_id);
    if (unit_it == units.end()) {
      RawUnit unit;
      Sentence& s = unit.sentence;
      s.id = unit_id;
      s.text = opt_field(*row, text_col);
      s.term1.surface = opt_field(*row, term1_col);
      s.term2.surface = opt_field(*row, term2_col);
      std::string seed_raw = opt_field(*row, seed_col);
      if (!seed_raw.empty()) {
        std::string token = NormalizeToken(seed_raw);
        auto mapped = mapping.value_map.find(token);
        s.seed_relation = mapped != mapping.value_map.end() ? mapped->second : token;
      }
      if (!mapping.source_tag.empty()) s.source_tag = mapping.source_tag;

      unit.usable = !s.text.empty();
      if (unit.usable) {
        auto b1 = ParseInt(opt_field(*row, b1_col));
        auto e1 = ParseInt(opt_field(*row, e1_col));
        auto b2 = ParseInt(opt_field(*row, b2_col));
        auto e2 = ParseInt(opt_field(*row, e2_col));
        bool offsets_valid =
            b1 && e1 && b2 && e2 && *b1 >= 0 && *b2 >= 0 && *b1 < *e1 &&
            *b2 < *e2 && static_cast<std::size_t>(*e1) <= s.text.size() &&
            static_cast<std::size_t>(*e2) <= s.text.size();
        if (offsets_valid) {
          s.term1.begin = static_cast<std::size_t>(*b1);
          s.term1.end = static_cast<std::size_t>(*e1);
          s.term2.begin = static_cast<std::size_t>(*b2);
          s.term2.end = static_cast<std::size_t>(*e2);
        } else {
          auto span1 = LocateTerm(s.text, s.term1.surface, 0);
          if (span1.has_value()) {
            s.term1.begin = span1->first;
            s.term1.end = span1->second;
            auto span2 = LocateTerm(s.text, s.term2.surface, 0);
            if (span2.has_value() && span2->first < span1->second &&
                span1->first < span2->second) {
              span2 = LocateTerm(s.text, s.term2.surface, span1->second);
            }
            if (span2.has_value()) {
              s.term2.begin = span2->first;
              s.term2.end = span2->second;
            } else {
              unit.usable = false;
            }
          } else {
            unit.usable = false;
          }
        }
      }
      if (!unit.usable) {
        warn_once("unit " + unit_id +
                  ": no usable text or term spans; unit skipped");
      }
      unit_it = units.emplace(unit_id, std::move(unit)).first;
    }
    if (!unit_it->second.usable) continue;

    std::vector<std::string> selections;
    for (const std::string& raw_token :
         SplitSelectionsCell(field(*row, selections_col),
                             mapping.selection_separators)) {
      std::string token = NormalizeToken(raw_token);
      if (token.empty()) continue;
      auto mapped = mapping.value_map.find(token);
      if (mapped != mapping.value_map.end()) token = mapped->second;
      if (schema.OptionIndex(token).has_value()) {
        selections.push_back(token);
      } else {
        warn_once("selection token '" + token +
                  "' does not map to any schema option; token dropped");
      }
    }
    std::sort(selections.begin(), selections.end());
    selections.erase(std::unique(selections.begin(), selections.end()),
                     selections.end());
    if (selections.empty()) {
      warn_once("row " + std::to_string(line) +
                ": no selection mapped to a schema option; row skipped");
      continue;
    }

    PendingJudgment p;
    p.judgment.worker_id = worker_id;
    p.judgment.sentence_id = unit_id;
    p.judgment.selections = std::move(selections);
    p.order_key = opt_field(*row, order_col);
    p.row_index = row_index;
    pending[unit_id].push_back(std::move(p));
  }

  for (auto& [unit_id, rows] : pending) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const PendingJudgment& a, const PendingJudgment& b) {
                       if (a.order_key != b.order_key)
                         return a.order_key < b.order_key;
                       return a.row_index < b.row_index;
                     });
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].judgment.submission_index = static_cast<std::int64_t>(i);
      result.judgments.push_back(std::move(rows[i].judgment));
    }
  }
  for (auto& [unit_id, unit] : units) {
    if (unit.usable) result.sentences.push_back(std::move(unit.sentence));
  }
  return result;
}

}  // namespace crowdrel
