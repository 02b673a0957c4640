#pragma once

#include <cstddef>
#include <functional>

namespace cqed {

// Number of worker threads to use: hardware concurrency, capped by the
// CQED_MAX_WORKERS environment variable when it holds a positive integer.
std::size_t worker_count();

// Calls body(i) for every i in [0, n) on up to `workers` threads. Each index is
// visited exactly once; callers write results into per-index slots so the
// outcome does not depend on scheduling. The first exception thrown by any
// body is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace cqed
