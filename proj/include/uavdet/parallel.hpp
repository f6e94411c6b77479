#ifndef UAVDET_PARALLEL_HPP_
#define UAVDET_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace uavdet {

// Runs body(i) for i in [0, n) on up to `jobs` threads. Callers write
// results into per-index slots, so the output never depends on the job
// count. If several indices throw, the exception of the lowest index is
// rethrown.
template <typename F>
void parallel_for(std::size_t n, int jobs, F&& body) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace uavdet

#endif  // UAVDET_PARALLEL_HPP_
