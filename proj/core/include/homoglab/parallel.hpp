#pragma once

#include <cstddef>
#include <functional>

namespace homoglab {

// Worker count: HOMOGLAB_THREADS if set and positive, else hardware concurrency.
int worker_count();

// Splits [0, n) into contiguous chunks and runs body(begin, end) on each, one
// chunk per worker. Exceptions from any chunk are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace homoglab
