// Minimal fork-join helpers. Work is split into fixed per-worker ranges so
// results can be combined in index order, keeping outputs identical for any
// worker count.
#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace ilc::detail {

// Calls fn(worker, lo, hi) for contiguous ranges covering [0, total).
// The partition depends only on (total, jobs).
template <class Fn>
void run_chunked(std::uint64_t total, unsigned jobs, Fn&& fn) {
  if (total == 0) return;
  std::uint64_t workers = jobs == 0 ? 1 : jobs;
  if (workers > total) workers = total;
  if (workers == 1) {
    fn(0u, std::uint64_t{0}, total);
    return;
  }

  const std::uint64_t base = total / workers;
  const std::uint64_t extra = total % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::uint64_t lo = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t hi = lo + base + (w < extra ? 1 : 0);
    pool.emplace_back([&fn, &errors, w, lo, hi] {
      try {
        fn(static_cast<unsigned>(w), lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    lo = hi;
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ilc::detail
