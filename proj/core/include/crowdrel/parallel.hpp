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

#ifndef CROWDREL_PARALLEL_HPP_
#define CROWDREL_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crowdrel {

// 0 means "use hardware concurrency". Thread count never changes results:
// parallel bodies write to per-index slots and reductions run sequentially
// afterwards.
void SetThreadCount(int count);
int ThreadCount();

namespace internal {
inline constexpr std::size_t kParallelGrain = 64;
}

// Invokes f(i) exactly once for each i in [0, n), split into contiguous
// chunks. The body must confine its writes to slots owned by index i.
template <typename F>
void ParallelFor(std::size_t n, F&& f) {
  const std::size_t threads = static_cast<std::size_t>(ThreadCount());
  if (threads <= 1 || n < 2 * internal::kParallelGrain) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }

  const std::size_t workers =
      std::min(threads, (n + internal::kParallelGrain - 1) /
                            internal::kParallelGrain);
  const std::size_t chunk = (n + workers - 1) / workers;

  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::mutex error_mutex;
  std::exception_ptr error;

  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace crowdrel

#endif  // CROWDREL_PARALLEL_HPP_
