#pragma once

#include <cstddef>
#include <functional>

namespace sieve {

// Runs fn(0) .. fn(count - 1) on up to `workers` threads. Items are handed
// out dynamically; callers must write results into per-index slots. If any
// call throws, the exception from the lowest failing index is rethrown after
// all threads have joined.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace sieve
