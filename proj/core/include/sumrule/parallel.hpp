#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace sumrule {

// Ordered parallel map: fn(i) runs once per index on up to `jobs` workers;
// callers index results by i, so output does not depend on scheduling.
template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(std::min(jobs, count)));
  for (int t = 0; t < std::min(jobs, count); ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace sumrule
