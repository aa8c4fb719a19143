#pragma once

#include <cstddef>
#include <functional>

namespace blowup {

/// Worker count: `requested` if nonzero, else hardware concurrency, then
/// capped by the BLOWUP_PROFILES_THREADS environment variable.
unsigned worker_count(unsigned requested = 0);

/// Runs body(i) for i in [0, n) on up to `workers` threads. Indices are
/// handed out dynamically; the first exception is rethrown after join.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace blowup
