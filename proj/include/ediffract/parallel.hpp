#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace ediffract {

// Static block partition; each index is handled by exactly one thread, so any per-index
// result is independent of the thread count.
template <class F>
void parallel_for(std::size_t n, F&& f, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t block = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b = t * block, e = std::min(n, b + block);
    if (b >= e) break;
    pool.emplace_back([b, e, &f] {
      for (std::size_t i = b; i < e; ++i) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ediffract
