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

#include "crowdrel/vectors.hpp"

#include <cmath>

#include "crowdrel/errors.hpp"

namespace crowdrel {

bool SentenceVector::IsZero() const {
  for (std::int64_t c : components) {
    if (c != 0) return false;
  }
  return true;
}

AnnotationVector MakeAnnotationVector(const Judgment& judgment,
                                      const RelationSchema& schema) {
  if (judgment.selections.empty()) {
    throw DataError("judgment by worker '" + judgment.worker_id +
                    "' on sentence '" + judgment.sentence_id +
                    "' selects no option");
  }
  AnnotationVector vector{std::vector<std::int64_t>(schema.Dimension(), 0)};
  for (const std::string& selection : judgment.selections) {
    auto index = schema.OptionIndex(selection);
    if (!index.has_value()) {
      throw DataError("selection '" + selection + "' by worker '" +
                      judgment.worker_id + "' on sentence '" +
                      judgment.sentence_id + "' is not a schema option");
    }
    vector.components[*index] = 1;
  }
  return vector;
}

SentenceVector MakeSentenceVector(std::span<const Judgment> judgments,
                                  const RelationSchema& schema) {
  if (judgments.empty()) {
    throw DataError("cannot build a sentence vector from zero judgments");
  }
  SentenceVector vector{std::vector<std::int64_t>(schema.Dimension(), 0),
                        static_cast<std::int64_t>(judgments.size())};
  for (const Judgment& judgment : judgments) {
    AnnotationVector row = MakeAnnotationVector(judgment, schema);
    for (std::size_t i = 0; i < row.components.size(); ++i) {
      vector.components[i] += row.components[i];
    }
  }
  return vector;
}

std::map<std::string, SentenceVector> AggregateSentences(
    std::span<const Judgment> judgments, const RelationSchema& schema) {
  std::map<std::string, SentenceVector> out;
  for (const Judgment& judgment : judgments) {
    auto [it, inserted] = out.try_emplace(
        judgment.sentence_id,
        SentenceVector{std::vector<std::int64_t>(schema.Dimension(), 0), 0});
    AnnotationVector row = MakeAnnotationVector(judgment, schema);
    for (std::size_t i = 0; i < row.components.size(); ++i) {
      it->second.components[i] += row.components[i];
    }
    it->second.worker_count += 1;
  }
  return out;
}

double Cosine(std::span<const std::int64_t> u,
              std::span<const std::int64_t> v) {
  if (u.size() != v.size()) {
    throw DataError("cosine requires vectors of equal dimension");
  }
  std::int64_t dot = 0;
  std::int64_t uu = 0;
  std::int64_t vv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0 || vv == 0 || dot == 0) return 0.0;
  double numerator = static_cast<double>(dot) * static_cast<double>(dot);
  double denominator = static_cast<double>(uu) * static_cast<double>(vv);
  double value = std::sqrt(numerator / denominator);
  return dot < 0 ? -value : value;
}

double UnitCosine(const SentenceVector& vector, std::size_t component) {
  if (component >= vector.components.size()) {
    throw DataError("component index out of range");
  }
  std::int64_t c = vector.components[component];
  if (c == 0) return 0.0;
  std::int64_t sum_squares = 0;
  for (std::int64_t value : vector.components) {
    sum_squares += value * value;
  }
  return std::sqrt(static_cast<double>(c * c) /
                   static_cast<double>(sum_squares));
}

}  // namespace crowdrel
