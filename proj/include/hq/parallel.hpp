#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace hq {

// Fork-join over [0, n) in contiguous chunks. The partition depends only on
// (n, threads), so reductions that combine per-chunk results in index order
// stay deterministic.
inline void parallel_for(long long n, int threads,
                         const std::function<void(long long, long long)>& fn) {
  if (threads <= 1 || n < 2 * threads) {
    fn(0, n);
    return;
  }
  long long chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    long long a = t * chunk;
    long long b = std::min(n, a + chunk);
    if (a >= b) break;
    pool.emplace_back(fn, a, b);
  }
  for (auto& th : pool) th.join();
}

}  // namespace hq
