#pragma once

#include <cstddef>
#include <functional>

namespace recordlab {

// Worker count: hardware concurrency capped by RECORDLAB_THREADS when set.
unsigned worker_count();

// Runs body(begin, end) over contiguous chunks of [0, count). Chunk boundaries
// depend only on `count` and `chunks`, never on the thread count, so callers
// that reduce per-chunk results in chunk order are deterministic.
void parallel_chunks(std::size_t count, std::size_t chunks,
                     const std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)>& body);

}  // namespace recordlab
