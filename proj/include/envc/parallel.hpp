#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace envc {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(begin, end) over a static partition of [0, n).  Workers write to
/// disjoint, index-addressed slots, so results do not depend on the thread
/// count.  The first exception thrown by any worker is rethrown.
inline void parallel_for(long n, int threads,
                         const std::function<void(long, long)>& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  const long chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    const long begin = t * chunk;
    const long end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, t, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace envc
