#pragma once

#include <functional>

namespace todaforge {

/// Effective worker count: `requested` when positive, otherwise hardware
/// concurrency, in both cases capped by the TODA_FORGE_THREADS environment
/// variable when it is set.
int thread_budget(int requested);

/// Runs chunk(begin, end) over a partition of [begin, end) on `threads`
/// workers. Chunks are contiguous, so per-index work that only writes its own
/// slots gives identical results for any worker count.
void parallel_for(int begin, int end, int threads, const std::function<void(int, int)>& chunk);

}  // namespace todaforge
