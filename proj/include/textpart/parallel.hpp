#pragma once

#include <cstddef>
#include <functional>

namespace textpart {

/// Worker cap from TEXTPART_THREADS (unset or 0 = hardware concurrency).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited exactly once; callers write results into per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace textpart
