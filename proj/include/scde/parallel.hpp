#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace scde {

//! Worker count: SCD_THREADS if set (>=1), otherwise hardware concurrency.
inline std::size_t thread_count()
{
  if (const char* env = std::getenv("SCD_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1)
      return static_cast<std::size_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

//! Run fn(i) for i in [0, n). Each index owns its output slot, so results
//! are identical for any thread count.
template<typename Fn>
void parallel_for(std::size_t n, Fn&& fn)
{
  const std::size_t workers = std::min(thread_count(), n == 0 ? std::size_t{ 1 } : n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers)
        fn(i);
    });
  }
  for (auto& t : pool)
    t.join();
}

} // namespace scde
