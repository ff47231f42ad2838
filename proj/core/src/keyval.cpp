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

#include <istream>
#include <ostream>

#include "crowdrel/errors.hpp"
#include "crowdrel/text.hpp"

namespace crowdrel {

KeyValueDoc KeyValueDoc::Parse(std::istream& in, const std::string& path) {
  KeyValueDoc doc;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view stripped = Trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(path, line_no, "expected 'key = value'");
    }
    std::string key(Trim(stripped.substr(0, eq)));
    std::string value(Trim(stripped.substr(eq + 1)));
    if (key.empty()) {
      throw ParseError(path, line_no, "empty key");
    }
    doc.entries_.emplace_back(std::move(key), std::move(value));
  }
  return doc;
}

void KeyValueDoc::Serialize(std::ostream& out) const {
  for (const auto& [key, value] : entries_) {
    out << key << " = " << value << '\n';
  }
}

const std::string* KeyValueDoc::Find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& KeyValueDoc::Require(std::string_view key,
                                        const std::string& path) const {
  const std::string* value = Find(key);
  if (value == nullptr) {
    throw ParseError(path, 0, "missing required key '" + std::string(key) + "'");
  }
  return *value;
}

std::vector<std::pair<std::string, std::string>> KeyValueDoc::WithPrefix(
    std::string_view prefix) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : entries_) {
    if (k.size() > prefix.size() && k.compare(0, prefix.size(), prefix) == 0) {
      out.emplace_back(k.substr(prefix.size()), v);
    }
  }
  return out;
}

void KeyValueDoc::Set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

}  // namespace crowdrel
