#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace orthodisk {

namespace detail {
inline std::atomic<int>& thread_setting() {
  static std::atomic<int> value{1};
  return value;
}
}  // namespace detail

/// Number of worker threads used by the library's parallel loops.
inline int default_threads() { return detail::thread_setting().load(); }
inline void set_default_threads(int n) { detail::thread_setting().store(std::max(1, n)); }

/// Runs body(i) for i in [0, n). Work is split into contiguous chunks, one
/// per thread; callers write results into slot i so the outcome never
/// depends on the thread count.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, int threads = default_threads()) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, threads)), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace orthodisk
