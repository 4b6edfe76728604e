#pragma once

#include <cstddef>
#include <functional>

namespace eqgirth::detail {

// Threads to use: hardware concurrency, capped by EQUATOR_GIRTH_THREADS.
std::size_t worker_count();

// Calls body(begin, end) on disjoint contiguous chunks covering [0, n).
// Chunks are handed out statically so each index is owned by one thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace eqgirth::detail
