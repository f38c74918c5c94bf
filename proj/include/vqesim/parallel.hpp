#pragma once

#include <cstddef>
#include <functional>

namespace vqesim {

/// Worker count: hardware concurrency, capped by ADAPTVQE_THREADS when set.
int thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads. Each index
/// runs exactly once; results must be written to per-index slots so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace vqesim
