// Copyright 2026 The qtoken Authors
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
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace qtoken::harness {

/// Splits [0, n) into contiguous chunks, one per worker, and calls body(begin, end).
/// The first exception thrown by any worker is rethrown after all have joined.
template <class Body>
void parallel_chunks(std::uint64_t n, int workers, Body&& body) {
  const auto w = static_cast<std::uint64_t>(std::max(1, workers));
  if (w == 1 || n < 2) {
    body(std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(w);
  const std::uint64_t chunk = (n + w - 1) / w;
  for (std::uint64_t k = 0; k < w; ++k) {
    const std::uint64_t begin = std::min(n, k * chunk);
    const std::uint64_t end = std::min(n, begin + chunk);
    pool.emplace_back([&, k, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace qtoken::harness
