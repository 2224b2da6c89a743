#pragma once

#include <cstddef>
#include <functional>

namespace geoeffect {

/// Worker count: BM_THREADS when set to a positive integer, otherwise the
/// machine's hardware concurrency.
unsigned thread_count();

/// Calls body(begin, end) over contiguous chunks of [0, n). Each index is
/// visited by exactly one call, so per-index pure work is bit-identical to
/// the sequential loop regardless of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace geoeffect
