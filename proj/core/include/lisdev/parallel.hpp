#pragma once

#include <cstddef>
#include <functional>

namespace lisdev {

/// Number of worker threads used by library loops. Defaults to the
/// LISDEV_THREADS environment variable, else hardware concurrency.
std::size_t thread_count();

/// Caps worker parallelism; 0 restores the default.
void set_thread_count(std::size_t threads);

/// Runs body(i) for i in [0, count). Work is split into contiguous chunks,
/// one per worker; callers that reduce must do so in index order so results
/// do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lisdev
