#pragma once

#include <cstddef>
#include <functional>

namespace cyclescope {

// Worker count for parallel sweeps: the override if set, else CYCLESCOPE_THREADS,
// else the hardware concurrency. Always >= 1.
int thread_count();

// Overrides thread_count() for this process; 0 restores the default.
void set_thread_count(int threads);

// Runs body(0..count-1) on up to thread_count() workers. Each index is processed
// exactly once; callers write results into per-index slots so the output does not
// depend on scheduling. If bodies throw, the exception from the lowest failing
// index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cyclescope
