#pragma once

#include <cstddef>
#include <functional>

namespace cforge {

/// Worker count for internal parallel loops: hardware concurrency, capped by
/// the COALITION_FORGE_THREADS environment variable when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Iterations are split into contiguous chunks;
/// callers write to disjoint slots so the result never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cforge
