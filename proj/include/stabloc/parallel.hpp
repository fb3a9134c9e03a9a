#pragma once

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace stabloc {

/// Worker count resolution: explicit request > STABLOC_THREADS > hardware.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STABLOC_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return unsigned(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs fn(worker_id, index) for every index in [0, count) across a fixed
/// worker pool. Work is handed out through an atomic counter in chunks;
/// callers own any per-worker state, so results can be merged in a
/// deterministic order afterwards.
template <class F>
inline void parallel_for(std::size_t count, unsigned threads, F&& fn, std::size_t chunk = 64) {
  unsigned workers = resolve_threads(threads);
  if (workers <= 1 || count < 2 * chunk) {
    for (std::size_t i = 0; i < count; ++i) fn(0u, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        std::size_t begin = next.fetch_add(chunk);
        if (begin >= count) return;
        std::size_t end = std::min(count, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) fn(w, i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace stabloc
