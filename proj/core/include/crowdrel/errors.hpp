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

#ifndef CROWDREL_ERRORS_HPP_
#define CROWDREL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crowdrel {

// Malformed input file. Carries the source path and 1-based line when known
// (line 0 means "no specific line").
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, std::size_t line, const std::string& message)
      : std::runtime_error(Format(path, line, message)),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  static std::string Format(const std::string& path, std::size_t line,
                            const std::string& message) {
    if (path.empty()) return message;
    if (line == 0) return path + ": " + message;
    return path + ":" + std::to_string(line) + ": " + message;
  }

  std::string path_;
  std::size_t line_;
};

// Invalid option, threshold, or run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates an operation's preconditions.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crowdrel

#endif  // CROWDREL_ERRORS_HPP_
