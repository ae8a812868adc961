#pragma once

// Minimal fork-join helper. COMSR_THREADS caps the worker count.

#include <cstdlib>
#include <thread>
#include <vector>

namespace comsr {

/// Effective worker count: `requested` (0 means hardware concurrency),
/// capped by the COMSR_THREADS environment variable when it is set.
inline unsigned effective_threads(unsigned requested = 0) {
  unsigned n = requested != 0 ? requested : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("COMSR_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1 && static_cast<unsigned>(cap) < n)
      n = static_cast<unsigned>(cap);
  }
  return n;
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers in contiguous blocks.
/// fn must only touch state owned by index i; results merge deterministically
/// because ownership is per index, not per worker.
template <typename Fn>
inline void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (n == 0) return;
  unsigned workers = effective_threads(threads);
  if (workers > n) workers = static_cast<unsigned>(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = static_cast<std::size_t>(w) * chunk;
    std::size_t end = begin + chunk < n ? begin + chunk : n;
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace comsr
