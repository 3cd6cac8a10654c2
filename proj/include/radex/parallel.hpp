#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace radex {

/// Number of workers to use when the caller passes 0.
inline unsigned default_workers() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// fn(begin, end) on each. fn must only write state owned by its chunk; the
/// partition then has no influence on the result. The first exception thrown
/// by any chunk is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = default_workers();
  const std::size_t chunks = std::min<std::size_t>(workers, count);
  if (chunks <= 1) {
    if (count > 0) fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks - 1);
  const auto run = [&](std::size_t k) {
    const std::size_t begin = count * k / chunks;
    const std::size_t end = count * (k + 1) / chunks;
    try {
      fn(begin, end);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  for (std::size_t k = 1; k < chunks; ++k) threads.emplace_back(run, k);
  run(0);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace radex
