#pragma once

#include <cstddef>
#include <functional>

namespace walkrank {

/// Upper bound on worker threads used by the library (default 1).
std::size_t thread_count() noexcept;
void set_thread_count(std::size_t threads) noexcept;

/// Calls `body(begin, end)` over disjoint sub-ranges of [0, n).
///
/// Work is split into contiguous blocks. Bodies must only write to state owned
/// by their own range, which keeps results independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_block = 256);

}  // namespace walkrank
