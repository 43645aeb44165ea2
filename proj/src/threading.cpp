#include "todaforge/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace todaforge {

int thread_budget(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("TODA_FORGE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

void parallel_for(int begin, int end, int threads, const std::function<void(int, int)>& chunk) {
  const int count = end - begin;
  if (count <= 0) return;
  threads = std::clamp(threads, 1, count);
  if (threads == 1) {
    chunk(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  const int per = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int b = begin + t * per;
    const int e = std::min(end, b + per);
    if (b >= e) break;
    pool.emplace_back(chunk, b, e);
  }
  for (auto& th : pool) th.join();
}

}  // namespace todaforge
