#pragma once

#include <cstddef>
#include <functional>

namespace frackac {

/// std::thread::hardware_concurrency(), at least 1.
std::size_t available_parallelism();

/// Calls body(i) for every i in [0, n) on up to `workers` threads. Work is
/// handed out by an atomic counter; the first exception stops the remaining
/// work and is rethrown on the calling thread.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body);

}  // namespace frackac
