// Copyright 2026 The adapteval Authors
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
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace adapteval::util {

/// Runs fn(i) for i in [0, n) on at most `max_inflight` threads. Callers write
/// results into index-addressed slots, so output order never depends on
/// completion order. The first exception thrown by any task is rethrown after
/// all workers finish.
inline void parallel_for(std::size_t n, std::size_t max_inflight,
                         const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(n, std::max<std::size_t>(1, max_inflight));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n && !failed.load();
             i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            bool expected = false;
            if (failed.compare_exchange_strong(expected, true)) {
              first_error = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace adapteval::util
