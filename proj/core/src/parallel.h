// Copyright 2026 The qmm Authors
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
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "qmm/types.h"

namespace qmm::internal {

// Runs body(k) for k in [0, n) on up to `workers` threads. The first
// exception thrown by any call is rethrown after all threads finish.
inline void parallel_for(Index n, int workers,
                         const std::function<void(Index)>& body) {
  const Index threads = std::clamp<Index>(workers, 1, std::max<Index>(n, 1));
  if (threads == 1) {
    for (Index k = 0; k < n; ++k) body(k);
    return;
  }
  std::atomic<Index> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (Index w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (Index k = next++; k < n; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qmm::internal
