#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace parhca {

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Tasks are
/// pulled from a shared counter; callers write results into slot i so the
/// outcome never depends on scheduling. The first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    auto n = std::min<std::size_t>(workers, count);
    pool.reserve(n);
    for (std::size_t k = 0; k < n; ++k) pool.emplace_back(run);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace parhca
