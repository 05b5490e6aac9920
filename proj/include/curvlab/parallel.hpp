#ifndef CURVLAB_PARALLEL_HPP
#define CURVLAB_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace curvlab {

// Worker count: hardware concurrency capped by CURVLAB_THREADS.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("CURVLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

// Runs fn(begin, end) over disjoint index chunks on a worker pool.  Chunk
// boundaries depend only on (count, workers), so any per-chunk partial
// results a caller collects can be reduced in a fixed order for reproducible
// rounding.
inline void parallel_chunks(std::int64_t count,
                            const std::function<void(std::int64_t, std::int64_t, int)>& fn) {
  const int workers = worker_count();
  if (count <= 0) return;
  if (workers == 1 || count < 2 * workers) {
    fn(0, count, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t b = w * chunk;
    const std::int64_t e = std::min<std::int64_t>(count, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e, w] { fn(b, e, w); });
  }
  for (auto& t : pool) t.join();
}

// Pairwise (tree) summation over a sequence of doubles indexed 0..count-1.
// Used by quadrature reducers so that accumulation order is fixed.
template <class Get>
double pairwise_sum(std::int64_t begin, std::int64_t end, const Get& get) {
  const std::int64_t n = end - begin;
  if (n <= 8) {
    double s = 0.0;
    for (std::int64_t i = begin; i < end; ++i) s += get(i);
    return s;
  }
  const std::int64_t mid = begin + n / 2;
  return pairwise_sum(begin, mid, get) + pairwise_sum(mid, end, get);
}

}  // namespace curvlab

#endif
