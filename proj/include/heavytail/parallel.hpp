#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace heavytail {

/// Worker cap: HEAVYTAIL_THREADS if set and positive, else hardware
/// concurrency. Results never depend on the cap; only wall time does.
inline std::size_t max_threads() {
  if (const char* env = std::getenv("HEAVYTAIL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(0..count-1) on up to max_threads() workers with a static stride
/// schedule. fn must write only to its own index's slot. The first exception
/// thrown by any worker is rethrown on the caller.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(count, max_threads());
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace heavytail
