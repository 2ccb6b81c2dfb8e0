#pragma once

#include <cstddef>
#include <functional>

namespace ramanforge {

/// Worker count: RAMANFORGE_THREADS when set to a positive integer,
/// otherwise the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads.
/// Work items must not share mutable state. If any item throws, the
/// exception from the lowest failing index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ramanforge
