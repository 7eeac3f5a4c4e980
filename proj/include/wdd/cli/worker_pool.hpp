#pragma once

#include <cstddef>
#include <functional>

namespace wdd::cli {

/// --threads value, else WDD_THREADS, else hardware concurrency (at least 1).
std::size_t resolve_threads(std::size_t requested);

/// Calls fn(i) for i in [0, n) on `threads` workers. The first exception is rethrown
/// after all workers stop.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace wdd::cli
