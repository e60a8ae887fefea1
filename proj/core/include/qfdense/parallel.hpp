#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qfdense {

/// Runs fn(i) for every i in [0, n) on up to `threads` workers. Callers
/// write into per-index slots and combine them in index order, so results
/// never depend on the thread count. If any call throws, the exception of
/// the lowest failing index is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t count = std::min(workers, n);
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace qfdense
