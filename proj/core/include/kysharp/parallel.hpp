#pragma once

#include <cstddef>
#include <functional>

namespace kysharp {

/// Upper bound on worker threads used by the library; 0 means
/// std::thread::hardware_concurrency().
void set_max_threads(int threads);
int max_threads();

/// Runs body(i) for i in [0, n), spread over at most max_threads() workers
/// in contiguous blocks. The first exception thrown by any worker is
/// rethrown on the calling thread after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace kysharp
