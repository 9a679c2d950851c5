#pragma once

#include <cstddef>
#include <functional>

namespace geodid {

/// Worker count: hardware concurrency, capped by the GEODID_THREADS
/// environment variable when it holds a positive integer.
std::size_t worker_count();

/// Calls body(i) for i in [0, count) across up to `workers` threads
/// (0 = worker_count()). The first exception thrown by any body is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = 0);

}  // namespace geodid
