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

#include "crowdrel/csv.hpp"

#include <istream>
#include <ostream>

#include "crowdrel/errors.hpp"

namespace crowdrel {

CsvReader::CsvReader(std::istream& in, std::string path, bool skip_comments)
    : in_(in), path_(std::move(path)), skip_comments_(skip_comments) {}

std::optional<std::vector<std::string>> CsvReader::Next() {
  for (;;) {
    int first = in_.peek();
    if (first == std::char_traits<char>::eof()) return std::nullopt;
    if (skip_comments_ && first == '#') {
      std::string discarded;
      std::getline(in_, discarded);
      ++line_;
      continue;
    }
    break;
  }

  record_line_ = line_;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;

  for (;;) {
    int ci = in_.get();
    if (ci == std::char_traits<char>::eof()) {
      if (quoted) {
        throw ParseError(path_, record_line_, "unterminated quoted field");
      }
      fields.push_back(std::move(field));
      return fields;
    }
    char c = static_cast<char>(ci);
    if (quoted) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        // A quote mid-field is kept literally; only a quote that opens the
        // field starts a quoted section.
        if (field.empty()) {
          quoted = true;
        } else {
          field += c;
        }
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        if (in_.peek() == '\n') in_.get();
        ++line_;
        fields.push_back(std::move(field));
        return fields;
      case '\n':
        ++line_;
        fields.push_back(std::move(field));
        return fields;
      default:
        field += c;
    }
  }
}

namespace {

bool NeedsQuoting(const std::string& field) {
  for (char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') return true;
  }
  return false;
}

void WriteField(std::ostream& out, const std::string& field) {
  if (!NeedsQuoting(field)) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

void CsvWriter::Row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    WriteField(out_, fields[i]);
  }
  out_ << '\n';
}

void CsvWriter::Row(std::initializer_list<std::string> fields) {
  Row(std::vector<std::string>(fields));
}

}  // namespace crowdrel
