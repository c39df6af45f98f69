#pragma once

#include <cstddef>
#include <functional>

namespace fssc {

// Resolves a requested worker count; 0 means "all available cores".
unsigned resolve_threads(unsigned requested);

// Runs work(begin, end) over disjoint chunks of [0, n). Chunks do not overlap,
// so workers may write to per-index slots without synchronization. Falls back
// to one inline call when the range is small or threads <= 1.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& work);

}  // namespace fssc
