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

#include "crowdrel/worker_quality.hpp"

#include <algorithm>
#include <map>

#include "crowdrel/errors.hpp"
#include "crowdrel/parallel.hpp"
#include "crowdrel/vectors.hpp"

namespace crowdrel {

namespace {

struct SentenceGroup {
  std::vector<AnnotationVector> members;
  std::vector<std::size_t> member_worker;  // indices into Pool::worker_ids
  SentenceVector total;
};

struct Pool {
  std::vector<std::string> worker_ids;  // sorted
  std::vector<SentenceGroup> groups;    // sorted by sentence id
  // Per worker: (group index, member index) pairs.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> memberships;
};

Pool BuildPool(std::span<const Judgment> judgments,
               const RelationSchema& schema) {
  Pool pool;
  std::map<std::string, std::size_t> worker_index;
  for (const Judgment& j : judgments) {
    worker_index.emplace(j.worker_id, 0);
  }
  pool.worker_ids.reserve(worker_index.size());
  for (auto& [id, index] : worker_index) {
    index = pool.worker_ids.size();
    pool.worker_ids.push_back(id);
  }
  pool.memberships.resize(pool.worker_ids.size());

  std::map<std::string, SentenceGroup> by_sentence;
  for (const Judgment& j : judgments) {
    SentenceGroup& group = by_sentence[j.sentence_id];
    if (group.total.components.empty()) {
      group.total.components.assign(schema.Dimension(), 0);
    }
    AnnotationVector row = MakeAnnotationVector(j, schema);
    for (std::size_t i = 0; i < row.components.size(); ++i) {
      group.total.components[i] += row.components[i];
    }
    group.total.worker_count += 1;
    group.members.push_back(std::move(row));
    group.member_worker.push_back(worker_index.at(j.worker_id));
  }

  pool.groups.reserve(by_sentence.size());
  for (auto& [sentence_id, group] : by_sentence) {
    std::size_t group_index = pool.groups.size();
    for (std::size_t m = 0; m < group.member_worker.size(); ++m) {
      pool.memberships[group.member_worker[m]].emplace_back(group_index, m);
    }
    pool.groups.push_back(std::move(group));
  }
  return pool;
}

double PoolWorkerSentenceAgreement(const Pool& pool, std::size_t worker) {
  const auto& membership = pool.memberships[worker];
  if (membership.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [g, m] : membership) {
    const SentenceGroup& group = pool.groups[g];
    const AnnotationVector& mine = group.members[m];
    std::vector<std::int64_t> rest = group.total.components;
    bool rest_nonzero = false;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      rest[i] -= mine.components[i];
      if (rest[i] != 0) rest_nonzero = true;
    }
    // A sentence the worker judged alone gives no agreement signal.
    if (rest_nonzero) sum += Cosine(mine.components, rest);
  }
  return sum / static_cast<double>(membership.size());
}

std::optional<double> PoolWorkerWorkerAgreement(const Pool& pool,
                                                std::size_t worker) {
  const auto& membership = pool.memberships[worker];
  double sum = 0.0;
  std::int64_t pairs = 0;
  for (const auto& [g, m] : membership) {
    const SentenceGroup& group = pool.groups[g];
    for (std::size_t other = 0; other < group.members.size(); ++other) {
      if (other == m) continue;
      sum += Cosine(group.members[m].components,
                    group.members[other].components);
      ++pairs;
    }
  }
  if (pairs == 0) return std::nullopt;
  return sum / static_cast<double>(pairs);
}

std::vector<WorkerMetrics> PoolMetrics(const Pool& pool) {
  std::vector<WorkerMetrics> rows(pool.worker_ids.size());
  ParallelFor(pool.worker_ids.size(), [&](std::size_t w) {
    WorkerMetrics& row = rows[w];
    row.worker_id = pool.worker_ids[w];
    row.worker_sentence_agreement = PoolWorkerSentenceAgreement(pool, w);
    row.worker_worker_agreement = PoolWorkerWorkerAgreement(pool, w);
    row.judged_sentences = static_cast<std::int64_t>(pool.memberships[w].size());
  });
  return rows;
}

}  // namespace

double WorkerSentenceAgreement(const std::string& worker_id,
                               std::span<const Judgment> judgments,
                               const RelationSchema& schema) {
  Pool pool = BuildPool(judgments, schema);
  auto it = std::lower_bound(pool.worker_ids.begin(), pool.worker_ids.end(),
                             worker_id);
  if (it == pool.worker_ids.end() || *it != worker_id) {
    throw DataError("worker '" + worker_id + "' has no judgments");
  }
  return PoolWorkerSentenceAgreement(
      pool, static_cast<std::size_t>(it - pool.worker_ids.begin()));
}

std::optional<double> WorkerWorkerAgreement(const std::string& worker_id,
                                            std::span<const Judgment> judgments,
                                            const RelationSchema& schema) {
  Pool pool = BuildPool(judgments, schema);
  auto it = std::lower_bound(pool.worker_ids.begin(), pool.worker_ids.end(),
                             worker_id);
  if (it == pool.worker_ids.end() || *it != worker_id) {
    throw DataError("worker '" + worker_id + "' has no judgments");
  }
  return PoolWorkerWorkerAgreement(
      pool, static_cast<std::size_t>(it - pool.worker_ids.begin()));
}

std::vector<WorkerMetrics> ComputeWorkerMetrics(
    std::span<const Judgment> judgments, const RelationSchema& schema) {
  return PoolMetrics(BuildPool(judgments, schema));
}

SpamFilterResult FilterSpamWorkers(std::span<const Judgment> judgments,
                                   const RelationSchema& schema,
                                   const SpamFilterOptions& options) {
  if (!(options.tau >= 0.0 && options.tau <= 1.0)) {
    throw ConfigError("spam threshold tau must lie in [0, 1]");
  }
  if (options.max_rounds < 1) {
    throw ConfigError("max_rounds must be at least 1");
  }
  if (options.worker_floor < 0) {
    throw ConfigError("worker_floor must be non-negative");
  }

  SpamFilterResult result;
  std::vector<Judgment> active(judgments.begin(), judgments.end());
  std::map<std::string, WorkerMetrics> final_state;

  for (int round = 1; round <= options.max_rounds; ++round) {
    Pool pool = BuildPool(active, schema);
    std::vector<WorkerMetrics> rows = PoolMetrics(pool);
    for (const WorkerMetrics& row : rows) {
      final_state[row.worker_id] = row;
    }
    result.rounds = round;

    std::set<std::string> removed;
    for (const WorkerMetrics& row : rows) {
      if (row.judged_sentences >= options.min_judgments_to_flag &&
          row.worker_sentence_agreement < options.tau) {
        removed.insert(row.worker_id);
      }
    }
    if (removed.empty()) break;

    for (const std::string& worker_id : removed) {
      WorkerMetrics& row = final_state.at(worker_id);
      row.spam_flag = true;
      row.removal_round = round;
    }
    std::erase_if(active, [&](const Judgment& j) {
      return removed.count(j.worker_id) > 0;
    });
  }

  result.trusted = std::move(active);
  result.metrics.reserve(final_state.size());
  for (auto& [worker_id, row] : final_state) {
    result.metrics.push_back(std::move(row));
  }
  FloorReport floor = EnforceWorkerFloor(result.trusted, options.worker_floor);
  result.thin_sentences.reserve(floor.below.size());
  for (const auto& [sentence_id, count] : floor.below) {
    result.thin_sentences.push_back(sentence_id);
  }
  return result;
}

FloorReport EnforceWorkerFloor(std::span<const Judgment> trusted, int floor) {
  if (floor < 0) {
    throw ConfigError("worker floor must be non-negative");
  }
  FloorReport report;
  report.floor = floor;
  std::map<std::string, std::int64_t> counts;
  for (const Judgment& j : trusted) {
    ++counts[j.sentence_id];
  }
  for (const auto& [sentence_id, count] : counts) {
    if (count < floor) {
      report.below.emplace_back(sentence_id, count);
    }
  }
  return report;
}

}  // namespace crowdrel
