#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dualmink {

/// Worker count: DUALMINK_THREADS if set and positive, else hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("DUALMINK_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

namespace detail {
inline thread_local bool inside_parallel_region = false;
}

/// Runs fn(i) for i in [0, count).  Callers write results into preallocated
/// slots indexed by i, so the thread partition never affects the output.
/// Nested calls from worker threads run serially.
inline void parallel_for(std::ptrdiff_t count, const std::function<void(std::ptrdiff_t)>& fn) {
  if (count <= 0) return;
  int workers = worker_count();
  if (workers <= 1 || count < 32 || detail::inside_parallel_region) {
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (workers > count) workers = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  std::ptrdiff_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::ptrdiff_t begin = w * chunk;
    std::ptrdiff_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      detail::inside_parallel_region = true;
      for (std::ptrdiff_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dualmink
