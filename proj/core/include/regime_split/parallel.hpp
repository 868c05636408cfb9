#pragma once

#include <cstddef>
#include <functional>

namespace regime_split {

// Worker count: REGIME_SPLIT_THREADS when set (clamped to >= 1),
// otherwise the machine parallelism.
int worker_count();

// Runs body(i) for i in [0, count) on contiguous index chunks.
// Callers own any output slots indexed by i, so results are
// independent of scheduling and worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace regime_split
