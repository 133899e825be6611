#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shatter {

// --threads semantics: values <= 0 mean "use the hardware"; anything else is
// taken literally.  Partitioning schemes must keep results independent of
// the resolved count.
inline int resolve_worker_count(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(worker_index) on `workers` threads; the first exception thrown by
// any worker is rethrown on the caller after all threads join.
template <typename Fn>
void run_workers(int workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Splits [0, total) into `workers` contiguous ranges (first ranges one
// longer when total does not divide evenly) and runs fn(worker, lo, hi).
template <typename Fn>
void parallel_ranges(std::uint64_t total, int workers, Fn&& fn) {
  if (workers < 1) workers = 1;
  const std::uint64_t w64 = static_cast<std::uint64_t>(workers);
  run_workers(workers, [&](int w) {
    const std::uint64_t base = total / w64, extra = total % w64;
    const std::uint64_t uw = static_cast<std::uint64_t>(w);
    const std::uint64_t lo = uw * base + std::min(uw, extra);
    const std::uint64_t hi = lo + base + (uw < extra ? 1 : 0);
    if (lo < hi) fn(w, lo, hi);
  });
}

}  // namespace shatter
