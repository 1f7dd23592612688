#pragma once

#include <cstddef>
#include <functional>

namespace pgv {

// PGVARIO_THREADS if set, otherwise the hardware concurrency.
int default_thread_count();

// Runs fn(0..n-1), possibly on n_threads workers. Results must be written to
// index-addressed slots so the outcome is identical for any thread count.
// The first exception thrown by fn is rethrown after all workers join.
void parallel_for(std::size_t n, int n_threads,
                  const std::function<void(std::size_t)>& fn);

} // namespace pgv
