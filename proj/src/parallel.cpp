#include "walkrank/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace walkrank {
namespace {

std::atomic<std::size_t> g_threads{1};

}  // namespace

std::size_t thread_count() noexcept { return g_threads.load(std::memory_order_relaxed); }

void set_thread_count(std::size_t threads) noexcept {
  g_threads.store(std::max<std::size_t>(1, threads), std::memory_order_relaxed);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_block) {
  const std::size_t workers =
      std::min(thread_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_block)));
  if (workers <= 1) {
    if (n > 0) body(0, n);
    return;
  }
  const std::size_t block = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
      const std::size_t begin = w * block;
      const std::size_t end = std::min(n, begin + block);
      if (begin >= end) break;
      pool.emplace_back([&body, &failures, w, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    try {
      body(0, std::min(n, block));
    } catch (...) {
      failures[0] = std::current_exception();
    }
  }
  // Rethrow the failure of the lowest block so the error does not depend on timing.
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

}  // namespace walkrank
