#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cmpairs {

// Runs f(0..n-1) on up to `jobs` worker threads (jobs <= 0: hardware
// concurrency). Tasks write into caller-preallocated slots, so results are
// deterministic regardless of scheduling. The first exception, if any, is
// rethrown on the calling thread after all workers join.
template <class F>
void parallel_for(int n, int jobs, F&& f) {
  if (n <= 0) return;
  int workers = jobs > 0 ? jobs : int(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  workers = std::min(workers, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cmpairs
