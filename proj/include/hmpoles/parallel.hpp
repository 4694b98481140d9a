#pragma once
/**
 * @file parallel.hpp
 * @brief Index-parallel loop with a thread count taken from HMPOLES_THREADS.
 */

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hm {

/// Worker count: HMPOLES_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
inline unsigned thread_count() {
  if (const char* env = std::getenv("HMPOLES_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls f(i) for i in [0, n). Results must be written to per-index slots so
/// that output does not depend on scheduling. The first exception is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f, unsigned threads = thread_count()) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        next = n;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace hm
