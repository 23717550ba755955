#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace chaoscalc::detail {

inline unsigned resolve_threads(unsigned threads, std::size_t work) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(work, 1)));
}

// Runs body(i) for i in [0, n) over contiguous chunks. Callers write results
// into slot i only, so output never depends on the thread count.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  threads = resolve_threads(threads, n);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
}

}  // namespace chaoscalc::detail
