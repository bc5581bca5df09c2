#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <utility>
#include <vector>

namespace subordkit {

/// Worker count for data-parallel sweeps: SUBORDKIT_THREADS overrides,
/// otherwise the hardware concurrency (min 1).
inline unsigned thread_count() {
  if (const char* env = std::getenv("SUBORDKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<unsigned>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1u;
}

/// Runs body(begin, end, slice_index) over contiguous index slices.
///
/// Slice boundaries depend only on n and the worker count, and callers reduce
/// per-slice results in slice order, so output bytes do not depend on thread
/// scheduling. Bodies must not throw; record failures into slice-local state
/// instead and surface them after the join.
template <class Body>
void parallel_slices(std::size_t n, Body&& body) {
  if (n == 0) return;
  const std::size_t workers = thread_count();
  if (workers <= 1 || n < 2 * workers) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = n / workers;
  const std::size_t extra = n % workers;
  std::size_t begin = 0;
  for (std::size_t s = 0; s < workers; ++s) {
    const std::size_t len = chunk + (s < extra ? 1 : 0);
    const std::size_t b = begin;
    const std::size_t e = begin + len;
    pool.emplace_back([&body, b, e, s] { body(b, e, s); });
    begin += len;
  }
  for (auto& th : pool) th.join();
}

}  // namespace subordkit
