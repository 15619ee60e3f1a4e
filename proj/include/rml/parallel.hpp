#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rml {

// Worker cap shared by all grid sweeps. 0 = hardware concurrency.
void set_max_threads(unsigned k);
unsigned max_threads();

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks. Chunk boundaries do not depend on the thread count, so reductions
// that combine per-chunk results in chunk order are deterministic.
void parallel_chunks(std::size_t total, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

} // namespace rml
