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

#ifndef CROWDREL_KEYVAL_HPP_
#define CROWDREL_KEYVAL_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crowdrel {

// Ordered "key = value" document: one entry per line, full-line '#' comments,
// blank lines ignored. Keys may repeat; lookups return the first match.
class KeyValueDoc {
 public:
  static KeyValueDoc Parse(std::istream& in, const std::string& path = "");

  void Serialize(std::ostream& out) const;

  const std::string* Find(std::string_view key) const;

  // Find, but throws ParseError naming |path| when the key is absent.
  const std::string& Require(std::string_view key,
                             const std::string& path = "") const;

  // Entries whose key starts with |prefix|; returned keys have the prefix
  // stripped.
  std::vector<std::pair<std::string, std::string>> WithPrefix(
      std::string_view prefix) const;

  void Set(std::string key, std::string value);

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace crowdrel

#endif  // CROWDREL_KEYVAL_HPP_
