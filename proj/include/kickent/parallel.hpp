// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace kickent {

// Runs body(begin, end) over contiguous static chunks of [0, count).
// Chunk boundaries depend only on count and workers, so any kernel whose
// items are independent produces identical output for every worker count.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    body(std::size_t{0}, count);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, count);
  const std::size_t per = (count + chunks - 1) / chunks;
  std::vector<std::jthread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * per;
    const std::size_t end = std::min(count, begin + per);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

}  // namespace kickent
