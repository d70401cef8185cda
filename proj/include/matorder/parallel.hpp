// Copyright 2026 The matorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace matorder {

// Worker count from MATORDER_THREADS, defaulting to 1.
int default_threads();

// Evaluates fn(i) for i in [0, count) on up to `threads` workers. Results are
// stored by index, so merging them is independent of scheduling.
template <class Result, class Fn>
std::vector<Result> run_indexed(int count, int threads, Fn&& fn) {
  std::vector<Result> results(static_cast<std::size_t>(std::max(count, 0)));
  const int workers = std::clamp(threads, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = w; i < count; i += workers) results[i] = fn(i);
      });
    }
  }
  return results;
}

}  // namespace matorder
