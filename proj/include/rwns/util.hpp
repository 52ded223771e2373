#pragma once

#include <cstddef>
#include <functional>

namespace rwns {

/// Worker count: RWNS_THREADS when set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Runs body(0..count-1) on up to worker_count() threads. Iterations must be
/// independent; results must not depend on scheduling (callers seed any RNG
/// per iteration index).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace rwns
