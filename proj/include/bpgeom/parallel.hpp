#pragma once

#include <cstddef>
#include <functional>

namespace bp {

// Worker count: BP_THREADS if set and positive, else the hardware count.
int thread_count();

// Runs fn(i) for i in [0, count) across worker threads. Each index is visited
// once; the first exception thrown (lowest index) is rethrown after joining.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace bp
