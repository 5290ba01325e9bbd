// Copyright 2026 The liegroup-index Authors
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

#include "liegroup/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace liegroup {

int worker_count() {
  if (const char* env = std::getenv("LIEGROUP_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void for_each_slice(std::size_t n, std::size_t slices,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (n == 0 || slices == 0) return;
  slices = std::min(slices, n);
  auto range = [&](std::size_t s) {
    return std::pair<std::size_t, std::size_t>{n * s / slices, n * (s + 1) / slices};
  };
  const std::size_t workers = std::min<std::size_t>(worker_count(), slices);
  if (workers <= 1) {
    for (std::size_t s = 0; s < slices; ++s) {
      auto [b, e] = range(s);
      body(s, b, e);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t s = next++; s < slices; s = next++) {
        try {
          auto [b, e] = range(s);
          body(s, b, e);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace liegroup
