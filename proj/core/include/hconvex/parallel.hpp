#ifndef HCONVEX_PARALLEL_HPP_
#define HCONVEX_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace hconvex {

/// Worker count: HCONVEX_THREADS if set, else hardware concurrency.
inline unsigned worker_count()
{
  if (const char* env = std::getenv("HCONVEX_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) {
      return static_cast<unsigned>(n);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template<class T>
struct FirstHit
{
  std::size_t index;
  T value;
};

/**
 * Evaluates trial(i) for i in [0, count) and returns the hit with the
 * smallest index, exactly as a sequential scan would.
 *
 * Indices are claimed in chunks of increasing order; a chunk is skipped only
 * when its first index exceeds the best hit so far, so every index below the
 * final answer is evaluated. An exception thrown by trial(i) counts as a hit
 * at i and is rethrown if it is the minimum.
 */
template<class T, class Trial>
std::optional<FirstHit<T>> parallel_first(std::size_t count, Trial&& trial, std::size_t chunk = 64)
{
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{count};
  std::mutex mutex;
  std::optional<FirstHit<T>> result;
  std::exception_ptr error;
  std::size_t error_index = count;

  auto worker = [&] {
    for (;;) {
      const std::size_t start = next.fetch_add(chunk);
      if (start >= count || start > best.load()) {
        return;
      }
      const std::size_t stop = std::min(count, start + chunk);
      for (std::size_t i = start; i < stop && i < best.load(); ++i) {
        try {
          std::optional<T> hit = trial(i);
          if (!hit) {
            continue;
          }
          std::lock_guard lock(mutex);
          if (i < best.load()) {
            best.store(i);
            result.emplace(FirstHit<T>{i, std::move(*hit)});
          }
        } catch (...) {
          std::lock_guard lock(mutex);
          if (i < best.load()) {
            best.store(i);
            error = std::current_exception();
            error_index = i;
          }
        }
      }
    }
  };

  const unsigned n_workers = std::min<std::size_t>(worker_count(), (count + chunk - 1) / chunk);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back(worker);
    }
  }

  if (error && error_index == best.load()) {
    std::rethrow_exception(error);
  }
  return result;
}

}  // namespace hconvex

#endif  // HCONVEX_PARALLEL_HPP_
