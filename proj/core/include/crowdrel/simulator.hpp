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

#ifndef CROWDREL_SIMULATOR_HPP_
#define CROWDREL_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crowdrel/ingest.hpp"
#include "crowdrel/schema.hpp"

namespace crowdrel {

// Synthetic corpus with known latent truth, for validating the pipeline:
// recoverable relation labels, plantable spammers, controllable ambiguity.
struct SimConfig {
  int n_sentences = 50;
  int n_workers = 15;
  int workers_per_sentence = 15;
  RelationSchema schema = DefaultSchema();
  // Fraction of sentences with a single true relation; the rest split their
  // probability evenly between two relations (genuinely ambiguous).
  double clear_fraction = 1.0;
  // Probability that a faithful worker answers from the latent distribution
  // rather than uniformly at random.
  double reliability = 0.9;
  double spam_fraction = 0.0;
  std::uint64_t seed = 0;

  // Throws ConfigError on out-of-range values.
  void Check() const;
};

struct LatentSentence {
  std::string sentence_id;
  std::string primary;                   // highest-probability relation
  std::optional<std::string> secondary;  // set for ambiguous sentences
  std::vector<double> relation_probs;    // over schema.relations
};

struct LatentWorker {
  std::string worker_id;
  bool spam = false;
  double reliability = 0.0;
};

struct LatentTruth {
  std::vector<LatentSentence> sentences;
  std::vector<LatentWorker> workers;
};

struct SimOutput {
  DatasetBundle bundle;
  LatentTruth truth;
};

// Deterministic in (config, seed): every draw comes from a counter-based
// stream keyed by its cell, so generation order and thread count are
// irrelevant. Spam workers answer uniformly over all options; faithful
// workers answer from the sentence's latent distribution with probability
// |reliability|.
SimOutput GenerateCorpus(const SimConfig& config);

}  // namespace crowdrel

#endif  // CROWDREL_SIMULATOR_HPP_
