#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace speclab {

// Number of worker threads to use, honoring an explicit request first.
std::size_t resolve_thread_count(std::size_t requested);

// Caps the threads OpenBLAS uses per call. Monte Carlo drivers run trials on
// independent workers and give each worker a single BLAS thread; single-shot
// solves keep BLAS at full width.
void set_blas_threads(int n);
int blas_thread_budget();

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items are
// handed out through an atomic counter, so results must be written to
// per-index slots by the callers. Rethrows the first exception.
void parallel_for_index(std::size_t count, std::size_t threads,
                        const std::function<void(std::size_t)>& fn);

}  // namespace speclab
