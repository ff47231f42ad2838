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

#ifndef CROWDREL_CSV_HPP_
#define CROWDREL_CSV_HPP_

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crowdrel {

// RFC 4180 reader: quoted fields, doubled-quote escapes, embedded newlines,
// and both LF and CRLF records. When |skip_comments| is set, records whose
// first byte is '#' are skipped (used for files carrying a header comment).
class CsvReader {
 public:
  explicit CsvReader(std::istream& in, std::string path = "",
                     bool skip_comments = false);

  // Next record, or nullopt at end of input. Throws ParseError on an
  // unterminated quoted field.
  std::optional<std::vector<std::string>> Next();

  // 1-based line where the most recent record started.
  std::size_t RecordLine() const { return record_line_; }
  const std::string& path() const { return path_; }

 private:
  std::istream& in_;
  std::string path_;
  bool skip_comments_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 1;
};

// Writes records with '\n' line endings and minimal quoting, so equal inputs
// serialize to identical bytes.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void Row(const std::vector<std::string>& fields);
  void Row(std::initializer_list<std::string> fields);

 private:
  std::ostream& out_;
};

}  // namespace crowdrel

#endif  // CROWDREL_CSV_HPP_
