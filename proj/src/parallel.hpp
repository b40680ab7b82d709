#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace opjhcpp::detail {

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Iterations
// must be independent; callers own any order-sensitive reduction.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::min(resolve_threads(threads), std::max(count, 1));
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([=, &fn] {
      for (int i = w; i < count; i += threads) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace opjhcpp::detail
