#pragma once

#include <cstddef>
#include <functional>

namespace domlab {

/// Worker count: DOMLAB_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t default_thread_count();

/// Runs body(chunk, begin, end) over `chunks` contiguous ranges covering
/// [0, n). The partition depends only on n and `chunks`, never on timing.
void parallel_chunks(std::size_t n, std::size_t chunks, std::size_t threads,
                     const std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)>& body);

}  // namespace domlab
