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

#ifndef CROWDREL_TEXT_HPP_
#define CROWDREL_TEXT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crowdrel {

// Shortest decimal form that round-trips the exact double. Stable across
// runs and platforms that implement std::to_chars correctly, which makes it
// safe for byte-compared report files.
std::string FormatDouble(double value);

// Strict parsers: the whole field must be consumed, no leading "+" or
// whitespace beyond what trim removed.
std::optional<double> ParseDouble(std::string_view text);
std::optional<std::int64_t> ParseInt(std::string_view text);

std::string_view Trim(std::string_view text);
std::vector<std::string> Split(std::string_view text, char separator);
std::string ToLower(std::string_view text);
std::string JoinStrings(const std::vector<std::string>& parts,
                        std::string_view separator);

// Collapses runs of ASCII whitespace to a single space and trims the ends.
std::string CollapseWhitespace(std::string_view text);

// Unicode NFC normalization. Input must be UTF-8; invalid bytes pass through
// unchanged.
std::string NfcNormalize(const std::string& text);

// Truncation toward zero at |digits| decimal places, the rounding used by
// the golden score tables (0.0967 -> 0.09, not 0.10).
double TruncateDecimals(double value, int digits);

}  // namespace crowdrel

#endif  // CROWDREL_TEXT_HPP_
