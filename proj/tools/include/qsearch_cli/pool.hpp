#pragma once

#include <cstddef>
#include <functional>

namespace qsearch::cli {

// Runs fn(0..n-1) on at most `workers` threads. The first exception thrown
// by any task is rethrown after all threads have joined.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace qsearch::cli
