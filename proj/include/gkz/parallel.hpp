#pragma once

#include <cstddef>
#include <functional>

namespace gkz {

/// Worker cap: GKZ_THREADS if set and positive, else hardware concurrency.
std::size_t thread_limit();

/// Runs body(i) for i in [0, n) on up to thread_limit() threads. Exceptions
/// from workers are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gkz
