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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "crowdrel/errors.hpp"
#include "crowdrel/schema.hpp"

using namespace crowdrel;

namespace {

const char* kFixtures = CROWDREL_TEST_DATA_DIR;

}  // namespace

TEST_CASE("ParseSchema reads relations, maps, and exclusions") {
  std::istringstream in(
      "relations = treat, cause\n"
      "sentinel_other = other\n"
      "sentinel_none = none\n"
      "umls_map.treat = treats; may_treat\n"
      "overlap_exclusions.cause = treat\n");
  RelationSchema schema = ParseSchema(in, "schema.cfg");
  CHECK(schema.relations == std::vector<std::string>{"treat", "cause"});
  CHECK(schema.umls_map.at("treat").count("may_treat") == 1);
  CHECK(schema.overlap_exclusions.at("cause").count("treat") == 1);
}

TEST_CASE("ParseSchema rejects unknown keys and broken schemas") {
  {
    std::istringstream in("relations = a\nwhatever = x\n");
    CHECK_THROWS_AS(ParseSchema(in), ParseError);
  }
  {
    std::istringstream in("sentinel_other = other\n");
    CHECK_THROWS_AS(ParseSchema(in), ParseError);  // missing relations
  }
  {
    std::istringstream in("relations = a, a\n");
    CHECK_THROWS_AS(ParseSchema(in), ParseError);  // duplicate ids
  }
}

TEST_CASE("Schema round-trips through WriteSchema and ParseSchema") {
  RelationSchema schema = DefaultSchema();
  schema.overlap_exclusions["cause"] = {"symptom", "side_effect"};
  std::ostringstream out;
  WriteSchema(out, schema);
  std::istringstream in(out.str());
  RelationSchema back = ParseSchema(in);
  CHECK(back == schema);
}

TEST_CASE("ParseSentences validates spans strictly") {
  SUBCASE("clean file parses") {
    std::istringstream in(
        "id,text,term1,term1_start,term1_end,term2,term2_start,term2_end,"
        "seed_relation,source_tag\n"
        "s1,abc def,abc,0,3,def,4,7,cause,tag\n");
    auto sentences = ParseSentences(in);
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0].term1.surface == "abc");
    CHECK(sentences[0].term2.begin == 4);
    CHECK(sentences[0].source_tag.value() == "tag");
  }
  SUBCASE("missing required column") {
    std::istringstream in("id,text\ns1,abc\n");
    CHECK_THROWS_AS(ParseSentences(in), ParseError);
  }
  SUBCASE("non-numeric span") {
    std::istringstream in(
        "id,text,term1,term1_start,term1_end,term2,term2_start,term2_end,"
        "seed_relation,source_tag\n"
        "s1,abc def,abc,zero,3,def,4,7,cause,\n");
    CHECK_THROWS_AS(ParseSentences(in), ParseError);
  }
  SUBCASE("span outside the text") {
    std::istringstream in(
        "id,text,term1,term1_start,term1_end,term2,term2_start,term2_end,"
        "seed_relation,source_tag\n"
        "s1,abc def,abc,0,3,def,4,99,cause,\n");
    CHECK_THROWS_AS(ParseSentences(in), ParseError);
  }
  SUBCASE("inverted span") {
    std::istringstream in(
        "id,text,term1,term1_start,term1_end,term2,term2_start,term2_end,"
        "seed_relation,source_tag\n"
        "s1,abc def,abc,3,0,def,4,7,cause,\n");
    CHECK_THROWS_AS(ParseSentences(in), ParseError);
  }
}

TEST_CASE("Sentences round-trip, including commas and category columns") {
  Sentence s;
  s.id = "s1";
  s.text = "Patients with dry mouth, headaches, or nausea were screened.";
  s.term1 = {"dry mouth", 14, 23, std::string("finding")};
  s.term2 = {"nausea", 39, 45, std::nullopt};
  s.seed_relation = "symptom";
  s.source_tag = "round,trip";

  std::ostringstream out;
  WriteSentences(out, std::vector<Sentence>{s});
  std::istringstream in(out.str());
  auto back = ParseSentences(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == s);
}

TEST_CASE("ParseJudgments splits, sorts, and dedupes selections") {
  RelationSchema schema = DefaultSchema();
  std::istringstream in(
      "worker_id,sentence_id,selections,submission_index\n"
      "w1,s1,symptom; cause;cause,0\n");
  auto judgments = ParseJudgments(in, schema);
  REQUIRE(judgments.size() == 1);
  CHECK(judgments[0].selections ==
        std::vector<std::string>{"cause", "symptom"});
}

TEST_CASE("ParseJudgments reconstructs missing submission indices per sentence") {
  RelationSchema schema = DefaultSchema();
  std::istringstream in(
      "worker_id,sentence_id,selections\n"
      "w1,s1,cause\n"
      "w2,s2,treat\n"
      "w3,s1,cause\n");
  auto judgments = ParseJudgments(in, schema);
  REQUIRE(judgments.size() == 3);
  CHECK(judgments[0].submission_index == 0);
  CHECK(judgments[1].submission_index == 0);
  CHECK(judgments[2].submission_index == 1);
}

TEST_CASE("ParseJudgments rejects malformed rows") {
  RelationSchema schema = DefaultSchema();
  {
    std::istringstream in(
        "worker_id,sentence_id,selections,submission_index\n"
        "w1,s1,nonesuch,0\n");
    CHECK_THROWS_AS(ParseJudgments(in, schema), ParseError);
  }
  {
    std::istringstream in(
        "worker_id,sentence_id,selections,submission_index\n"
        "w1,s1,cause;;treat,0\n");
    CHECK_THROWS_AS(ParseJudgments(in, schema), ParseError);
  }
  {
    std::istringstream in(
        "worker_id,sentence_id,selections,submission_index\n"
        "w1,s1,cause,-2\n");
    CHECK_THROWS_AS(ParseJudgments(in, schema), ParseError);
  }
}

TEST_CASE("Judgments round-trip through write and parse") {
  RelationSchema schema = DefaultSchema();
  std::vector<Judgment> judgments = {
      {"w1", "s1", {"cause", "symptom"}, 0},
      {"w2", "s1", {"none"}, 1},
  };
  std::ostringstream out;
  WriteJudgments(out, judgments);
  std::istringstream in(out.str());
  auto back = ParseJudgments(in, schema);
  CHECK(back == judgments);
}

TEST_CASE("ParseExpertLabels insists on binary decisions") {
  {
    std::istringstream in(
        "sentence_id,relation,decision\n"
        "s1,cause,1\n"
        "s2,cause,0\n");
    auto labels = ParseExpertLabels(in);
    REQUIRE(labels.size() == 2);
    CHECK(labels[0].positive);
    CHECK_FALSE(labels[1].positive);
  }
  {
    std::istringstream in(
        "sentence_id,relation,decision\n"
        "s1,cause,yes\n");
    CHECK_THROWS_AS(ParseExpertLabels(in), ParseError);
  }
}

TEST_CASE("ParseAdjudications reads the three resolutions") {
  std::istringstream in(
      "sentence_id,relation,resolution\n"
      "s1,cause,positive\n"
      "s2,cause,negative\n"
      "s3,cause,unresolved\n");
  auto records = ParseAdjudications(in);
  REQUIRE(records.size() == 3);
  CHECK(records[0].resolution == Resolution::kPositive);
  CHECK(records[1].resolution == Resolution::kNegative);
  CHECK(records[2].resolution == Resolution::kUnresolved);

  std::istringstream bad(
      "sentence_id,relation,resolution\n"
      "s1,cause,maybe\n");
  CHECK_THROWS_AS(ParseAdjudications(bad), ParseError);
}

TEST_CASE("ParsePredictions requires finite numeric scores") {
  {
    std::istringstream in(
        "sentence_id,relation,score\n"
        "s1,cause,0.75\n"
        "s2,cause,-0.2\n");
    auto records = ParsePredictions(in);
    REQUIRE(records.size() == 2);
    CHECK(records[0].score == 0.75);
  }
  {
    std::istringstream in("sentence_id,relation,score\ns1,cause,inf\n");
    CHECK_THROWS_AS(ParsePredictions(in), ParseError);
  }
  {
    std::istringstream in("sentence_id,relation,score\ns1,cause,abc\n");
    CHECK_THROWS_AS(ParsePredictions(in), ParseError);
  }
}

TEST_CASE("LoadBundle validates and dedupes in one pass") {
  std::string dir = std::string(kFixtures) + "/table_golden";
  LoadResult result = LoadBundle(dir + "/schema.cfg", dir + "/sentences.csv",
                                 dir + "/judgments.csv");
  CHECK(result.report.Accepted());
  CHECK(result.bundle.sentences.size() == 2);
  CHECK(result.bundle.judgments.size() == 30);
  CHECK_THROWS_AS(LoadBundle("/nonexistent/schema.cfg", dir + "/sentences.csv",
                             dir + "/judgments.csv"),
                  ConfigError);
}

TEST_CASE("ImportRawExport converts the bundled raw fixture") {
  std::string dir = std::string(kFixtures) + "/import_raw";
  RelationSchema schema = DefaultSchema();
  ImportMapping mapping;
  {
    std::ifstream in(dir + "/mapping.cfg");
    REQUIRE(in.good());
    mapping = ImportMapping::FromDoc(KeyValueDoc::Parse(in, "mapping.cfg"),
                                     "mapping.cfg");
  }
  std::ifstream raw(dir + "/raw_export.csv");
  REQUIRE(raw.good());
  ImportResult result = ImportRawExport(raw, mapping, schema, "raw_export.csv");

  REQUIRE(result.sentences.size() == 2);
  const Sentence& s101 = result.sentences[0];
  CHECK(s101.id == "101");
  CHECK(s101.term1.surface == "Iron supplements");
  CHECK(s101.term1.begin == 0);
  CHECK(s101.term1.end == 16);
  CHECK(s101.seed_relation == "treat");
  CHECK(s101.source_tag.value() == "fixture");

  // Unit 102 has no offsets; terms are located by substring search.
  const Sentence& s102 = result.sentences[1];
  CHECK(s102.term1.begin == 0);
  CHECK(s102.term1.end == 7);
  CHECK(s102.term2.begin == 31);
  CHECK(s102.term2.end == 43);
  CHECK(s102.seed_relation == "side_effect");

  // Worker 2002's order key (10:01) precedes 2001's (10:02).
  REQUIRE(result.judgments.size() == 4);
  CHECK(result.judgments[0].worker_id == "2002");
  CHECK(result.judgments[0].submission_index == 0);
  CHECK(result.judgments[0].selections ==
        std::vector<std::string>{"prevent", "treat"});
  CHECK(result.judgments[1].worker_id == "2001");
  CHECK(result.judgments[1].selections == std::vector<std::string>{"treat"});
  CHECK(result.judgments[2].selections == std::vector<std::string>{"none"});
  CHECK(result.judgments[3].sentence_id == "102");
  CHECK(result.judgments[3].selections == std::vector<std::string>{"cause"});

  // Worker 2002's judgment on unit 102 was dropped: no token mapped.
  CHECK_FALSE(result.warnings.empty());

  // The converted output passes validation.
  auto report = ValidateDataset(result.sentences, result.judgments, schema);
  CHECK(report.Accepted());
}

TEST_CASE("ImportMapping::FromDoc rejects unknown keys") {
  std::istringstream in("nonsense_key = 1\n");
  KeyValueDoc doc = KeyValueDoc::Parse(in);
  CHECK_THROWS_AS(ImportMapping::FromDoc(doc, "mapping.cfg"), ParseError);
}
