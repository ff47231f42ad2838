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

#include "crowdrel/keyval.hpp"

#include <sstream>

#include <doctest.h>

#include "crowdrel/errors.hpp"

using namespace crowdrel;

TEST_CASE("KeyValueDoc parses, trims, and skips comments") {
  std::istringstream in(
      "# comment\n"
      "alpha = 1\n"
      "\n"
      "beta=two words \n"
      "nested.key = x\n");
  KeyValueDoc doc = KeyValueDoc::Parse(in, "test.cfg");
  REQUIRE(doc.entries().size() == 3);
  CHECK(doc.Require("alpha") == "1");
  CHECK(doc.Require("beta") == "two words");
  CHECK(doc.Require("nested.key") == "x");
  CHECK(doc.Find("missing") == nullptr);
  CHECK_THROWS_AS(doc.Require("missing"), ParseError);
}

TEST_CASE("KeyValueDoc rejects malformed lines") {
  {
    std::istringstream in("no equals sign\n");
    CHECK_THROWS_AS(KeyValueDoc::Parse(in, "bad.cfg"), ParseError);
  }
  {
    std::istringstream in("= value without key\n");
    CHECK_THROWS_AS(KeyValueDoc::Parse(in, "bad.cfg"), ParseError);
  }
}

TEST_CASE("KeyValueDoc keeps later equals signs in the value") {
  std::istringstream in("expr = a=b=c\n");
  KeyValueDoc doc = KeyValueDoc::Parse(in);
  CHECK(doc.Require("expr") == "a=b=c");
}

TEST_CASE("WithPrefix strips the prefix and keeps order") {
  std::istringstream in(
      "map.a = 1\n"
      "other = x\n"
      "map.b = 2\n");
  KeyValueDoc doc = KeyValueDoc::Parse(in);
  auto sub = doc.WithPrefix("map.");
  REQUIRE(sub.size() == 2);
  CHECK(sub[0].first == "a");
  CHECK(sub[1].first == "b");
}

TEST_CASE("Serialize round-trips through Parse") {
  KeyValueDoc doc;
  doc.Set("one", "1");
  doc.Set("two", "a, b, c");
  doc.Set("one", "updated");
  std::ostringstream out;
  doc.Serialize(out);
  std::istringstream in(out.str());
  KeyValueDoc back = KeyValueDoc::Parse(in);
  CHECK(back.Require("one") == "updated");
  CHECK(back.Require("two") == "a, b, c");
  CHECK(back.entries().size() == 2);
}
