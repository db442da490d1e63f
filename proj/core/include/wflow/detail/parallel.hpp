#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace wflow::detail {

inline int worker_count() {
  if (const char* env = std::getenv("WFLOW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

/// Runs fn(begin, end) on contiguous index chunks across worker threads.
/// Chunking is static, so results that only depend on per-index work are
/// identical for any thread count.
inline void parallel_chunks(int begin, int end, const std::function<void(int, int)>& fn) {
  const int n = end - begin;
  if (n <= 0) return;
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(size_t(workers));
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto& t : pool) t.join();
}

}  // namespace wflow::detail
