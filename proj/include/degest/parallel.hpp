#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace degest {

/// Runs fn(0..count-1) across `threads` workers. Each index must write only
/// to its own output slot; results are then independent of scheduling, so
/// output is identical for any thread count.
inline void parallel_for_index(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int n = std::min(threads, count);
  pool.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace degest
