#pragma once

#include <cstddef>
#include <functional>

namespace superframe {

/// Worker count from SUPERFRAME_THREADS, else the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Each index is
/// handled exactly once; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t workers = worker_count());

}  // namespace superframe
