#pragma once

#include <cstddef>
#include <functional>

namespace graphtest {

// Worker cap from GRAPHTEST_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

// Runs fn(0..n-1) on up to worker_count() threads with static chunking.
// Nested calls degrade to serial execution. Callers must make each index
// independent; aggregation order is the caller's job, so results are
// bit-identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace graphtest
