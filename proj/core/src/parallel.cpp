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

#include "crowdrel/parallel.hpp"

#include <atomic>

namespace crowdrel {

namespace {
std::atomic<int> g_thread_count{0};
}

void SetThreadCount(int count) {
  g_thread_count.store(count < 0 ? 0 : count, std::memory_order_relaxed);
}

int ThreadCount() {
  int configured = g_thread_count.load(std::memory_order_relaxed);
  if (configured > 0) return configured;
  unsigned hardware = std::thread::hardware_concurrency();
  return hardware > 0 ? static_cast<int>(hardware) : 1;
}

}  // namespace crowdrel
