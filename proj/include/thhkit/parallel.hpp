#pragma once

#include <cstddef>
#include <functional>

namespace thhkit {

/// Process-wide worker count for parallel_for; 1 (the default) runs inline.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls fn(i) for every i in [0, n). Each index is handled exactly once;
/// callers write results into per-index slots so output order never
/// depends on scheduling. The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace thhkit
