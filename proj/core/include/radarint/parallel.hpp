#pragma once

#include <cstddef>
#include <functional>

namespace radarint {

/// Number of workers to use for a request of `threads` (0 = hardware).
unsigned resolve_threads(unsigned threads);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Items are
/// handed out dynamically; callers write results into pre-sized slots so the
/// outcome never depends on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace radarint
