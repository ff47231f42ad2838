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

#include <benchmark/benchmark.h>

#include <sstream>
#include <string>

#include "crowdrel/evaluation.hpp"
#include "crowdrel/ingest.hpp"
#include "crowdrel/rng.hpp"
#include "crowdrel/scoring.hpp"
#include "crowdrel/simulator.hpp"
#include "crowdrel/stability.hpp"
#include "crowdrel/vectors.hpp"
#include "crowdrel/worker_quality.hpp"

namespace {

crowdrel::SimOutput MakeCorpus(int sentences, double spam_fraction) {
  crowdrel::SimConfig config;
  config.n_sentences = sentences;
  config.n_workers = 15;
  config.workers_per_sentence = 15;
  config.clear_fraction = 0.7;
  config.reliability = 0.9;
  config.spam_fraction = spam_fraction;
  config.seed = 42;
  return crowdrel::GenerateCorpus(config);
}

void BM_AggregateSentences(benchmark::State& state) {
  auto sim = MakeCorpus(static_cast<int>(state.range(0)), 0.0);
  for (auto _ : state) {
    auto vectors =
        crowdrel::AggregateSentences(sim.bundle.judgments, sim.bundle.schema);
    benchmark::DoNotOptimize(vectors);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(sim.bundle.judgments.size()));
}
BENCHMARK(BM_AggregateSentences)->Arg(100)->Arg(1000);

void BM_ScoreAll(benchmark::State& state) {
  auto sim = MakeCorpus(static_cast<int>(state.range(0)), 0.0);
  auto vectors =
      crowdrel::AggregateSentences(sim.bundle.judgments, sim.bundle.schema);
  for (auto _ : state) {
    auto table = crowdrel::ScoreAll(vectors, sim.bundle.schema);
    benchmark::DoNotOptimize(table);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(vectors.size()));
}
BENCHMARK(BM_ScoreAll)->Arg(100)->Arg(1000);

void BM_SpamFilter(benchmark::State& state) {
  auto sim = MakeCorpus(static_cast<int>(state.range(0)), 0.2);
  for (auto _ : state) {
    auto result = crowdrel::FilterSpamWorkers(sim.bundle.judgments,
                                              sim.bundle.schema, {});
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_SpamFilter)->Arg(100)->Arg(500);

void BM_AnnotationQuality(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  crowdrel::GoldMap gold;
  crowdrel::ScoreMap predicted;
  crowdrel::ScoreMap srs;
  auto stream = crowdrel::rng::CellStream(7, "bench_quality");
  for (int i = 0; i < n; ++i) {
    std::string id = "s" + std::to_string(i);
    gold[id] = stream.NextUnit() < 0.5;
    predicted[id] = stream.NextUnit() * 2.0 - 1.0;
    srs[id] = stream.NextUnit();
  }
  for (auto _ : state) {
    auto report = crowdrel::AnnotationQuality(predicted, gold, &srs);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_AnnotationQuality)->Arg(100)->Arg(10000);

void BM_ParseJudgments(benchmark::State& state) {
  auto sim = MakeCorpus(static_cast<int>(state.range(0)), 0.0);
  std::ostringstream buffer;
  crowdrel::WriteJudgments(buffer, sim.bundle.judgments);
  const std::string csv = buffer.str();
  for (auto _ : state) {
    std::istringstream in(csv);
    auto judgments = crowdrel::ParseJudgments(in, sim.bundle.schema);
    benchmark::DoNotOptimize(judgments);
  }
  state.SetBytesProcessed(state.iterations() *
                          static_cast<std::int64_t>(csv.size()));
}
BENCHMARK(BM_ParseJudgments)->Arg(100)->Arg(1000);

void BM_MeanCosineDeltaCurve(benchmark::State& state) {
  auto sim = MakeCorpus(static_cast<int>(state.range(0)), 0.0);
  for (auto _ : state) {
    auto curve = crowdrel::MeanCosineDeltaCurve(sim.bundle.judgments,
                                                sim.bundle.schema, 15);
    benchmark::DoNotOptimize(curve);
  }
}
BENCHMARK(BM_MeanCosineDeltaCurve)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
