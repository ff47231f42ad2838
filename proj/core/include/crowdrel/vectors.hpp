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

#ifndef CROWDREL_VECTORS_HPP_
#define CROWDREL_VECTORS_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crowdrel/schema.hpp"

namespace crowdrel {

// 0/1 indicator over the schema options for one judgment.
struct AnnotationVector {
  std::vector<std::int64_t> components;
};

// Component-wise sum of one sentence's annotation vectors. The component sum
// is at least worker_count because every judgment selects at least one
// option.
struct SentenceVector {
  std::vector<std::int64_t> components;
  std::int64_t worker_count = 0;

  bool IsZero() const;
};

// Throws DataError when the judgment selects no option or an option missing
// from the schema.
AnnotationVector MakeAnnotationVector(const Judgment& judgment,
                                      const RelationSchema& schema);

// Throws DataError when |judgments| is empty. Callers pass all judgments of
// one sentence; membership is not re-checked here.
SentenceVector MakeSentenceVector(std::span<const Judgment> judgments,
                                  const RelationSchema& schema);

// Groups judgments by sentence and sums. Keys are sentence ids, ordered.
std::map<std::string, SentenceVector> AggregateSentences(
    std::span<const Judgment> judgments, const RelationSchema& schema);

// Cosine similarity between non-negative integer vectors, computed as
// sqrt(dot^2 / (|u|^2 |v|^2)) over exact integer products. As long as the
// squared values stay below 2^53 the result is invariant under integer
// scaling of either argument, and cos(v, v) is exactly 1. Zero vectors have
// cosine 0 with everything.
double Cosine(std::span<const std::int64_t> u, std::span<const std::int64_t> v);

// Cosine along a single axis: component / euclidean norm, on the same exact
// integer route. This is the sentence-relation score of one option.
double UnitCosine(const SentenceVector& vector, std::size_t component);

}  // namespace crowdrel

#endif  // CROWDREL_VECTORS_HPP_
