#pragma once

#include <cstddef>
#include <functional>

namespace radiant {

/// Worker count: RADIANT_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, n) on up to
/// worker_count() threads. Chunks are disjoint, so bodies that only write
/// their own range give results independent of the thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace radiant
