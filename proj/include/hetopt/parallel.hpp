#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hetopt {

// Runs fn(i) for i in [0, n) on up to `threads` workers with static chunking.
// fn must only write to state owned by index i, so the result is identical
// for every thread count.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const int begin = static_cast<int>(static_cast<long long>(n) * t / threads);
    const int end = static_cast<int>(static_cast<long long>(n) * (t + 1) / threads);
    pool.emplace_back([&, begin, end] {
      try {
        for (int i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hetopt
