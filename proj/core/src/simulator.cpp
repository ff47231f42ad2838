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

#include "crowdrel/simulator.hpp"

#include <cmath>
#include <numeric>

#include "crowdrel/errors.hpp"
#include "crowdrel/rng.hpp"

namespace crowdrel {

void SimConfig::Check() const {
  if (n_sentences < 1) throw ConfigError("n_sentences must be at least 1");
  if (n_workers < 1) throw ConfigError("n_workers must be at least 1");
  if (workers_per_sentence < 1 || workers_per_sentence > n_workers) {
    throw ConfigError("workers_per_sentence must lie in [1, n_workers]");
  }
  if (!(clear_fraction >= 0.0 && clear_fraction <= 1.0)) {
    throw ConfigError("clear_fraction must lie in [0, 1]");
  }
  if (!(reliability >= 0.0 && reliability <= 1.0)) {
    throw ConfigError("reliability must lie in [0, 1]");
  }
  if (!(spam_fraction >= 0.0 && spam_fraction <= 1.0)) {
    throw ConfigError("spam_fraction must lie in [0, 1]");
  }
  schema.Check();
  if (clear_fraction < 1.0 && schema.relations.size() < 2) {
    throw ConfigError("ambiguous sentences need at least two relations");
  }
}

namespace {

std::string PaddedId(const char* prefix, int index, int count) {
  int width = 1;
  for (int remaining = count - 1; remaining >= 10; remaining /= 10) ++width;
  width = std::max(width, 3);
  std::string digits = std::to_string(index);
  return std::string(prefix) +
         std::string(static_cast<std::size_t>(width) - digits.size(), '0') +
         digits;
}

// Builds the sentence text while recording exact term spans, so generated
// corpora always pass span validation.
Sentence MakeSentenceText(const std::string& id, int index,
                          const std::string& seed_relation) {
  std::string factor = "factor_" + std::to_string(index);
  std::string outcome = "outcome_" + std::to_string(index);

  Sentence s;
  s.id = id;
  s.text = "Cohort record " + std::to_string(index) + " notes that ";
  s.term1.surface = factor;
  s.term1.begin = s.text.size();
  s.text += factor;
  s.term1.end = s.text.size();
  s.text += " is repeatedly reported together with ";
  s.term2.surface = outcome;
  s.term2.begin = s.text.size();
  s.text += outcome;
  s.term2.end = s.text.size();
  s.text += " during follow-up.";
  s.seed_relation = seed_relation;
  s.source_tag = "synthetic";
  return s;
}

std::size_t SampleIndex(const std::vector<double>& probabilities, double unit) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (unit < cumulative) return i;
  }
  return probabilities.size() - 1;
}

}  // namespace

SimOutput GenerateCorpus(const SimConfig& config) {
  config.Check();
  const std::size_t n_relations = config.schema.relations.size();
  const std::size_t dimension = config.schema.Dimension();

  SimOutput out;
  out.bundle.schema = config.schema;

  const int n_spam = static_cast<int>(
      std::llround(config.spam_fraction * config.n_workers));
  std::vector<int> worker_order(static_cast<std::size_t>(config.n_workers));
  std::iota(worker_order.begin(), worker_order.end(), 0);
  {
    auto stream = rng::CellStream(config.seed, "spam_assignment");
    stream.Shuffle(worker_order);
  }
  std::vector<bool> is_spam(static_cast<std::size_t>(config.n_workers), false);
  for (int i = 0; i < n_spam; ++i) {
    is_spam[static_cast<std::size_t>(worker_order[static_cast<std::size_t>(i)])] =
        true;
  }
  std::vector<std::string> worker_ids;
  worker_ids.reserve(static_cast<std::size_t>(config.n_workers));
  for (int w = 0; w < config.n_workers; ++w) {
    std::string id = PaddedId("w", w, config.n_workers);
    out.truth.workers.push_back(LatentWorker{
        id, is_spam[static_cast<std::size_t>(w)],
        is_spam[static_cast<std::size_t>(w)] ? 0.0 : config.reliability});
    worker_ids.push_back(std::move(id));
  }

  for (int i = 0; i < config.n_sentences; ++i) {
    auto latent_stream =
        rng::CellStream(config.seed, "latent", static_cast<std::uint64_t>(i));
    bool clear = latent_stream.NextUnit() < config.clear_fraction;
    std::size_t primary =
        static_cast<std::size_t>(latent_stream.NextBelow(n_relations));

    LatentSentence latent;
    latent.sentence_id = PaddedId("s", i, config.n_sentences);
    latent.primary = config.schema.relations[primary];
    latent.relation_probs.assign(n_relations, 0.0);
    if (clear) {
      latent.relation_probs[primary] = 1.0;
    } else {
      std::size_t secondary = (primary + 1 +
                               static_cast<std::size_t>(
                                   latent_stream.NextBelow(n_relations - 1))) %
                              n_relations;
      latent.secondary = config.schema.relations[secondary];
      latent.relation_probs[primary] = 0.5;
      latent.relation_probs[secondary] = 0.5;
    }

    Sentence sentence =
        MakeSentenceText(latent.sentence_id, i, latent.primary);
    out.bundle.sentences.emplace(sentence.id, std::move(sentence));

    std::vector<int> assignment(static_cast<std::size_t>(config.n_workers));
    std::iota(assignment.begin(), assignment.end(), 0);
    {
      auto stream = rng::CellStream(config.seed, "assignment",
                                    static_cast<std::uint64_t>(i));
      stream.Shuffle(assignment);
    }

    for (int slot = 0; slot < config.workers_per_sentence; ++slot) {
      int w = assignment[static_cast<std::size_t>(slot)];
      auto stream =
          rng::CellStream(config.seed, "judgment",
                          static_cast<std::uint64_t>(i),
                          static_cast<std::uint64_t>(w));
      std::size_t option;
      if (is_spam[static_cast<std::size_t>(w)]) {
        option = static_cast<std::size_t>(stream.NextBelow(dimension));
      } else if (stream.NextUnit() < config.reliability) {
        option = SampleIndex(latent.relation_probs, stream.NextUnit());
      } else {
        option = static_cast<std::size_t>(stream.NextBelow(dimension));
      }

      Judgment judgment;
      judgment.worker_id = worker_ids[static_cast<std::size_t>(w)];
      judgment.sentence_id = latent.sentence_id;
      judgment.selections = {config.schema.OptionName(option)};
      judgment.submission_index = slot;
      out.bundle.judgments.push_back(std::move(judgment));
    }
    out.truth.sentences.push_back(std::move(latent));
  }
  return out;
}

}  // namespace crowdrel
