#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace alphamod {

// Worker count for data-parallel loops. Controlled by ALPHAMOD_THREADS;
// defaults to the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("ALPHAMOD_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(i) for i in [0, n). Deterministic regardless of thread count:
// workers own disjoint index ranges and must not share mutable state other
// than per-index slots. Falls back to a plain loop for small n.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const unsigned workers = worker_count();
  if (workers <= 1 || n < 2 * workers) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace alphamod
