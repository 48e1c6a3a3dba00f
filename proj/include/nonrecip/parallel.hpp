#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace nonrecip {

/// Worker count for sweeps: NONRECIP_THREADS if set and positive, otherwise
/// the hardware concurrency. 0 means auto.
unsigned sweep_thread_count();

/// Calls body(i) for i in [0, n) on up to `threads` workers using contiguous
/// chunks. body must only write to slot i of its output.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, const Body& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([begin, end, &body, &error = errors[w]] {
        try {
          for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          error = std::current_exception();
        }
      });
    }
  }
  // First failing chunk in grid order wins.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Evaluates fn over items in parallel, results kept in input order.
template <typename Item, typename Fn>
auto parallel_map(const std::vector<Item>& items, unsigned threads, const Fn& fn) {
  using Result = decltype(fn(items.front()));
  std::vector<Result> out(items.size());
  parallel_for(items.size(), threads, [&](std::size_t i) { out[i] = fn(items[i]); });
  return out;
}

}  // namespace nonrecip
