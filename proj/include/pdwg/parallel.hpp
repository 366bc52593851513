#pragma once

#include <cstddef>
#include <functional>

namespace pdwg {

/// Number of worker threads for element loops. Defaults to the value of the
/// PDWG_NUM_THREADS environment variable, or the hardware concurrency.
int num_threads();
void set_num_threads(int n);

/// Calls fn(i) for i in [0, n), split into contiguous chunks across threads.
/// fn must only write to per-index storage.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace pdwg
