#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace gkktau {

/// Smallest i in [0, count) with pred(i) true, or count if none. With
/// jobs > 1 the range is split into interleaved blocks; the answer does not
/// depend on scheduling. pred must be safe to call concurrently.
template <class Pred>
std::size_t first_index_where(std::size_t count, unsigned jobs, Pred pred) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return count;
  }
  constexpr std::size_t block = 64;
  std::atomic<std::size_t> best{count};
  auto worker = [&](unsigned id) {
    for (std::size_t start = id * block; start < count; start += block * jobs) {
      if (start >= best.load(std::memory_order_relaxed)) return;
      const std::size_t stop = std::min(count, start + block);
      for (std::size_t i = start; i < stop; ++i) {
        if (i >= best.load(std::memory_order_relaxed)) return;
        if (pred(i)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
  for (auto& th : pool) th.join();
  return best.load();
}

/// Runs body(i) for every i in [0, count).
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body body) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace gkktau
