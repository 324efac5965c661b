#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace embolic {

/// Runs fn(i) for every i in [0, count), split into contiguous chunks, one
/// chunk per worker thread. Callers must write results only into per-index
/// slots and merge them afterwards in index order; under that discipline the
/// output is identical for every thread count. threads <= 1 runs inline.
/// fn must not throw (record per-index failures instead and raise after the
/// join, so the reported failure is the one with the smallest index).
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = count * w / workers;
    const std::size_t hi = count * (w + 1) / workers;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace embolic
