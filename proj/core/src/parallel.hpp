// Copyright 2026 The freeshift Authors.
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace freeshift::detail {

// Fixed chunk size so that per-chunk partial results, merged in chunk order,
// do not depend on the worker count.
inline constexpr std::uint64_t kChunkSize = 4096;

// Runs fn(chunk_index, begin, end) over [0, total) split into kChunkSize
// pieces. Returns one Partial per chunk, in chunk order.
template <typename Partial, typename Fn>
std::vector<Partial> map_chunks(std::uint64_t total, unsigned workers, Fn&& fn) {
  const std::uint64_t chunks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<Partial> out(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        const std::uint64_t begin = c * kChunkSize;
        out[c] = fn(c, begin, std::min(total, begin + kChunkSize));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(chunks);
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(
                                                                  std::max<std::uint64_t>(chunks, 1))));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace freeshift::detail
